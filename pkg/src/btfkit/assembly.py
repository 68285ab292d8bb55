"""Steiner BTFs: substitute flat building blocks into a Steiner matrix."""

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .algebra import is_prime_power
from .designs import affine_steiner, projective_steiner
from .diffsets import picket_fence, predicted_harmonic_angles, simplectic, singer
from .frames import Frame, angle_report, classify, is_flat, is_unit_norm, tightness, welch_constant
from .harmonic import harmonic_frame
from .numerics import DEFAULT_TOL, cluster, same_values


class AssemblyError(ValueError):
    pass


class CertificationError(AssemblyError):
    """The assembled frame failed a post-construction check."""


@dataclass(frozen=True)
class AssemblySpec:
    steiner: object
    blocks: tuple
    mode: str  # "etf-blocks" or "btf-blocks"


@dataclass(frozen=True)
class Assembly:
    frame: Frame
    predicted: tuple | None
    empirical: tuple
    classification: object
    certified: bool
    markers: tuple = field(default=())


def block_mode(block, s):
    """Which hypothesis of the assembly theorem a block satisfies, if any."""
    if block.m != s or not is_flat(block):
        return None
    c = classify(block)
    if c.kind == "ETF":
        return "etf-blocks"
    # a flat orthonormal basis (t = s) meets the Welch bound 0 and serves as an ETF block
    if block.n == s and c.kind == "d-angular" and c.d == 1 and c.report.coherence <= block.tol.cluster_tol:
        return "etf-blocks"
    if c.kind == "BTF" and any(abs(x - 1 / s) <= block.tol.cluster_tol for x in c.report.angles):
        return "btf-blocks"
    return None


def make_spec(steiner, blocks):
    """Check the blocks against the Steiner matrix and infer the mode."""
    blocks = tuple(blocks)
    if len(blocks) == 1:
        blocks = blocks * steiner.v
    if len(blocks) != steiner.v:
        raise AssemblyError(f"need {steiner.v} blocks, got {len(blocks)}")
    s = steiner.s
    for j, H in enumerate(blocks):
        if H.m != s:
            raise AssemblyError(f"block {j} has dimension {H.m}, Steiner matrix needs s={s}")
    if len({H.n for H in blocks}) != 1:
        raise AssemblyError("blocks have unequal vector counts t")
    modes = {block_mode(H, s) for H in blocks}
    if None in modes:
        raise AssemblyError("a block is not a flat ETF or a flat BTF containing the angle 1/s")
    if len(modes) != 1:
        raise AssemblyError("blocks mix ETF and BTF modes")
    return AssemblySpec(steiner, blocks, modes.pop())


def predicted_assembly_angles(v, k, t, mode, block_angles=None):
    if (v - 1) % (k - 1):
        raise ValueError(f"s = (v-1)/(k-1) is not integral for v={v}, k={k}")
    s = (v - 1) // (k - 1)
    if mode == "etf-blocks":
        w = welch_constant(t, s) if t > s else 0.0
        vals = sorted({1 / s, w})
        if abs(vals[-1] - vals[0]) <= 1e-12:
            vals = vals[:1]
        return tuple(vals)
    if mode == "btf-blocks":
        return tuple(sorted(block_angles))
    raise ValueError(f"unknown mode {mode!r}")


def _build(steiner, blocks):
    A = steiner.data
    m = steiner.m
    parts = []
    for j, H in enumerate(blocks):
        Fj = np.zeros((m, H.n), dtype=complex)
        Fj[np.flatnonzero(A[:, j])] = H.synthesis
        parts.append(Fj)
    return np.hstack(parts)


def assemble(spec, force=False, tol=DEFAULT_TOL):
    """Assemble and certify a Steiner BTF.

    With ``force`` the block hypotheses are not enforced and the result
    carries only empirical angles plus an ``uncertified-prediction`` marker.
    """
    steiner, blocks = spec.steiner, tuple(spec.blocks)
    if force:
        if any(H.m != steiner.s for H in blocks) or len(blocks) != steiner.v:
            raise AssemblyError(f"blocks must have dimension s={steiner.s}, one per column")
        field_tag = "real" if all(H.field_tag == "real" for H in blocks) else "complex"
        F = Frame(_build(steiner, blocks), field_tag, tol)
        c = classify(F)
        emp = c.report.angles if c.report else ()
        return Assembly(F, None, emp, c, False, ("uncertified-prediction",))

    checked = make_spec(steiner, blocks)
    if checked.mode != spec.mode:
        raise AssemblyError(f"blocks satisfy {checked.mode}, spec says {spec.mode}")
    block_angles = [angle_report(H).angles for H in blocks]
    if spec.mode == "btf-blocks" and not all(same_values(block_angles[0], b, tol) for b in block_angles):
        raise AssemblyError("BTF blocks disagree on their angle sets")
    t = blocks[0].n
    predicted = predicted_assembly_angles(steiner.v, steiner.k, t, spec.mode, block_angles[0])
    field_tag = "real" if all(H.field_tag == "real" for H in blocks) else "complex"
    F = Frame(_build(steiner, blocks), field_tag, tol)

    if not is_unit_norm(F):
        raise CertificationError("assembled frame is not unit-norm")
    a = tightness(F)
    if a is None or abs(a - t * steiner.v / steiner.m) > tol.eq_tol:
        raise CertificationError("assembled frame is not tight with a = tv/m")
    c = classify(F)
    if c.kind not in ("BTF", "ETF"):
        raise CertificationError(f"assembled frame classified {c}")
    if not same_values(predicted, c.report.angles, tol):
        raise CertificationError(f"angles {c.report.angles} differ from prediction {predicted}")
    return Assembly(F, predicted, c.report.angles, c, True)


def angle_dichotomy(F, t, v, tol=DEFAULT_TOL):
    """Split |<f, f'>| into cross-block and within-block values.

    Returns (cross, within): sorted distinct values for column pairs taken
    from different t-column blocks and from the same block.
    """
    G = np.abs(F.gram())
    block = np.repeat(np.arange(v), t)
    iu = np.triu_indices(F.n, 1)
    same = block[iu[0]] == block[iu[1]]
    vals = G[iu]
    return cluster(vals[~same], tol), cluster(vals[same], tol)


# ---- corollary tables -------------------------------------------------------

FAMILIES = (
    "steiner-etf",
    "affine-singer", "projective-singer", "unital-singer",
    "affine-picket", "projective-picket", "unital-picket",
)


@dataclass(frozen=True)
class CorollaryReport:
    family: str
    q: int
    claimed: tuple  # (n, m, angles)
    computed: tuple | None  # (n, m, angles), None when no building block fits
    consistent: bool
    notes: tuple = ()


def _is_square(q):
    r = int(round(sqrt(q)))
    return r * r == q


def _steiner_params(geometry, q, a):
    if geometry == "affine":
        v, k = q**a, q
    elif geometry == "projective":
        v, k = (q ** (a + 1) - 1) // (q - 1), q + 1
    elif geometry == "unital":
        v, k = q**3 + 1, q + 1
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    s = (v - 1) // (k - 1)
    m = v * (v - 1) // (k * (k - 1))
    return v, k, s, m


def corollary_params(family, q, a=2, geometry=None):
    """Claimed versus computed (n, m, angles) for a Steiner BTF family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if q < 2 or is_prime_power(q) is None:
        raise ValueError(f"q={q} is not a prime power")
    kind, _, block = family.partition("-")
    if family == "steiner-etf":
        geometry = geometry or "projective"
        v, k, s, m = _steiner_params(geometry, q, a)
        claimed = (v * (k + 1), m, (1 / s,))
        t, block_dim = s + 1, s
        block_params = (t, s, t, s - 1, s - 1)
        mode = "etf-blocks"
    else:
        geometry = kind
        if geometry == "unital" and not _is_square(q):
            raise ValueError(f"unital families need q square, got q={q}")
        if block == "picket" and is_prime_power(q + 1) is None:
            raise ValueError(f"picket families need q+1 prime power, got q={q}")
        v, k, s, m = _steiner_params(geometry, q, 2)
        claimed_m = {"affine": q * (q + 1), "projective": q * q + q + 1,
                     "unital": q * q * (q**3 + 1) // (q + 1)}[geometry]
        if block == "singer":
            claimed_n = {"affine": q * q * (q * q + q + 1), "projective": (q * q + q + 1) ** 2,
                         "unital": (q + 1) * (q * q + q + 1)}[geometry]
            claimed_angles = (1 / (q + 1), sqrt(q) / (q + 1))
            t, block_dim = q * q + q + 1, q + 1
            block_params = (t, q + 1, t, 1, 1)
            mode = "etf-blocks"
        else:
            claimed_n = {"affine": q**3 * (q + 1), "projective": q * (q + 2) * (q * q + q + 1),
                         "unital": q * (q + 1) * (q**3 + 1)}[geometry]
            claimed_angles = (1 / (q + 1), 1 / sqrt(q + 1))
            r = q + 1
            t, block_dim = r * r - 1, r
            block_params = (t, r, r - 1, 0, 1)
            mode = "btf-blocks"
        claimed = (claimed_n, claimed_m, claimed_angles)

    notes = []
    if block_dim != s:
        notes.append(f"s-mismatch: blocks have dimension {block_dim}, Steiner matrix has s={s}")
        computed = None
    else:
        angles = predicted_assembly_angles(v, k, t, mode, predicted_harmonic_angles(block_params))
        computed = (t * v, m, angles)
    if geometry == "unital":
        notes.append("unital Steiner matrices are ingestion-only")
    consistent = (
        computed is not None
        and computed[0] == claimed[0]
        and computed[1] == claimed[1]
        and same_values(sorted(claimed[2]), computed[2])
    )
    if computed is not None and computed[0] != claimed[0]:
        notes.append(f"paper_n={claimed[0]} computed_n={computed[0]} inconsistent")
    return CorollaryReport(family, q, claimed, computed, consistent, tuple(notes))


def family_blocks(family, q, a=2, geometry=None, tol=DEFAULT_TOL):
    """Build the Steiner matrix and harmonic building block for a family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "steiner-etf":
        geometry = geometry or "projective"
    else:
        geometry = family.split("-")[0]
        a = 2
    if geometry == "unital":
        raise ValueError("unital Steiner matrices have no built-in construction; supply one with --steiner")
    steiner = (affine_steiner if geometry == "affine" else projective_steiner)(q, a)
    if family == "steiner-etf":
        D = simplectic(steiner.s + 1)
    elif family.endswith("singer"):
        D = singer(q)
    else:
        if is_prime_power(q + 1) is None:
            raise ValueError(f"picket families need q+1 prime power, got q={q}")
        D = picket_fence(q + 1)
    return steiner, harmonic_frame(D.group, D.S, tol)


def assemble_family(family, q, a=2, geometry=None, tol=DEFAULT_TOL):
    steiner, H = family_blocks(family, q, a, geometry, tol)
    spec = make_spec(steiner, [H])
    return assemble(spec, tol=tol)


# ---- consecutive prime powers ----------------------------------------------

MAX_PAIR_LIMIT = 10**6


def _prime_power_sieve(N):
    is_pp = np.zeros(N + 1, dtype=bool)
    exponent = np.zeros(N + 1, dtype=np.int8)
    base = np.zeros(N + 1, dtype=np.int64)
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(N**0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    for p in np.flatnonzero(sieve):
        p = int(p)
        x, e = p, 1
        while x <= N:
            is_pp[x], exponent[x], base[x] = True, e, p
            x *= p
            e += 1
    return is_pp, exponent, base


def prime_power_pairs(limit):
    """All q <= limit with q and q+1 both prime powers, classified.

    Classes: ``catalan-exception`` for (8, 9); ``small-power-pair`` when the
    power of two in the pair is 2 or 4; otherwise ``mersenne-type`` when
    q = 2^t - 1 is prime and ``fermat-type`` when q + 1 = 2^t + 1 is prime.
    """
    if limit > MAX_PAIR_LIMIT:
        raise ValueError(f"limit {limit} exceeds {MAX_PAIR_LIMIT}")
    if limit < 2:
        return []
    is_pp, exponent, base = _prime_power_sieve(limit + 1)
    out = []
    for q in np.flatnonzero(is_pp[2:limit + 1] & is_pp[3:limit + 2]) + 2:
        q = int(q)
        assert is_prime_power(q) and is_prime_power(q + 1)
        if exponent[q] >= 2 and exponent[q + 1] >= 2:
            label = "catalan-exception"
        else:
            two = q if base[q] == 2 else q + 1
            if two <= 4:
                label = "small-power-pair"
            elif two == q + 1:
                label = "mersenne-type"
            else:
                label = "fermat-type"
        out.append((q, label))
    return out


def proper_power_pairs(limit):
    """q <= limit with q and q+1 both prime powers of exponent >= 2."""
    is_pp, exponent, _ = _prime_power_sieve(limit + 1)
    return [q for q in range(2, limit + 1)
            if is_pp[q] and is_pp[q + 1] and exponent[q] >= 2 and exponent[q + 1] >= 2]
