"""Bidifference sets: verification, classical constructions and search.

A subset S of an abelian group G is a bidifference set relative to A
(identity in A) when every non-identity element of A arises as a
difference of two elements of S exactly lambda times and every element
outside A exactly mu times.
"""

import itertools
from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .algebra import AbelianGroup, FiniteField, is_prime_power

KINDS = ("difference", "relative", "divisible", "partial", "general-bidifference")

MAX_SEARCH_ORDER = 40
MAX_SEARCH_SUBSETS = 10_000_000
_BATCH = 200_000


class BidifferenceError(ValueError):
    """Difference counts are not constant where they must be.

    ``element`` and ``count`` identify the first offending group element.
    """

    def __init__(self, message, element=None, count=None):
        super().__init__(message)
        self.element = element
        self.count = count


@dataclass(frozen=True)
class BidifferenceSet:
    group: AbelianGroup
    S: tuple
    A: tuple
    params: tuple  # (n, m, l, lam, mu)
    kind: str

    @property
    def n(self):
        return self.params[0]

    @property
    def m(self):
        return self.params[1]

    def display_S(self):
        return [self.group.display(g) for g in self.S]


def _difference_counts(G, S):
    counts = {g: 0 for g in G.elements}
    for x, y in itertools.permutations(S, 2):
        counts[G.sub(x, y)] += 1
    return counts


def _constant_on(counts, region):
    """The common count over ``region``, or the first deviating element."""
    value, first = None, None
    for g in region:
        c = counts[g]
        if value is None:
            value, first = c, g
        elif c != value:
            return None, (g, c, first, value)
    return value, None


def verify_bidifference(G, S, A):
    """Return (lambda, mu) for S relative to A, or raise BidifferenceError.

    Vacuous parameters: lambda is 0 when A = {e}; mu equals lambda when A = G.
    """
    S = sorted({G.element(g) for g in S})
    A = sorted({G.element(a) for a in A})
    e = G.identity
    if e not in A:
        raise ValueError("relative set must contain the identity")
    counts = _difference_counts(G, S)
    Aset = set(A)
    inner = [a for a in A if a != e]
    outer = [b for b in G.elements if b not in Aset]
    lam, bad = _constant_on(counts, inner)
    if bad:
        g, c, g0, c0 = bad
        raise BidifferenceError(
            f"element {G.display(g)} of A has {c} representations, {G.display(g0)} has {c0}", g, c)
    mu, bad = _constant_on(counts, outer)
    if bad:
        g, c, g0, c0 = bad
        raise BidifferenceError(
            f"element {G.display(g)} outside A has {c} representations, {G.display(g0)} has {c0}", g, c)
    if lam is None:
        lam = 0
    if mu is None:
        mu = lam
    return lam, mu


def classify_kind(G, S, A, lam, mu):
    Aset = set(A)
    if lam == mu:
        return "difference"
    if G.is_subgroup(Aset):
        return "relative" if lam == 0 else "divisible"
    if Aset == set(S) | {G.identity}:
        return "partial"
    return "general-bidifference"


def bidifference_set(G, S, A=None):
    """Verify and wrap S; A defaults to the whole group (difference sets)."""
    S = tuple(sorted({G.element(g) for g in S}))
    A = tuple(sorted({G.element(a) for a in (G.elements if A is None else A)}))
    lam, mu = verify_bidifference(G, S, A)
    params = (G.order, len(S), len(A), lam, mu)
    return BidifferenceSet(G, S, A, params, classify_kind(G, S, A, lam, mu))


def simplectic(n):
    if n < 2:
        raise ValueError("simplectic difference sets need n >= 2")
    G = AbelianGroup.cyclic(n)
    D = bidifference_set(G, range(1, n))
    assert D.params[3] == n - 2
    return D


def _prime_power_q(q, cap=16):
    if q < 2 or is_prime_power(q) is None:
        raise ValueError(f"q={q} is not a prime power")
    if q > cap:
        raise ValueError(f"q={q} exceeds the construction cap {cap}")


def singer(q):
    """(q^2+q+1, q+1, 1) difference set in the cyclic group of order q^2+q+1."""
    _prime_power_q(q)
    p, c = is_prime_power(q)
    E = FiniteField(p, 3 * c)
    v = q * q + q + 1
    S = sorted({i % v for i in range(E.order - 1) if E.trace(E.exp(i), q) == 0})
    D = bidifference_set(AbelianGroup.cyclic(v), S)
    if D.params != (v, q + 1, v, 1, 1):
        raise BidifferenceError(f"Singer construction failed for q={q}: {D.params}")
    return D


def picket_fence(q):
    """(q^2-1, q, q-1, 1) relative difference set in Z_{q^2-1}."""
    _prime_power_q(q)
    p, c = is_prime_power(q)
    E = FiniteField(p, 2 * c)
    n = q * q - 1
    S = [i for i in range(n) if E.trace(E.exp(i), q) == 1]
    A = range(0, n, q + 1)
    D = bidifference_set(AbelianGroup.cyclic(n), S, A)
    if D.params != (n, q, q - 1, 0, 1):
        raise BidifferenceError(f"picket fence construction failed for q={q}: {D.params}")
    return D


def predicted_harmonic_angles(params):
    """Frame angles of the harmonic frame of a divisible difference set.

    Of the two closed-form values, the first is realised only when the
    relative subgroup is proper (l < n) and the second only when it is
    nontrivial (l > 1); equal values collapse to one.
    """
    n, m, l, lam, mu = params
    r1 = m - lam + l * (lam - mu)
    r2 = m - lam
    if r1 < 0 or r2 < 0:
        raise ValueError(f"negative radicand for parameters {params}")
    out = []
    if l < n:
        out.append(sqrt(r1) / m)
    if l > 1:
        out.append(sqrt(r2) / m)
    out.sort()
    if len(out) == 2 and abs(out[0] - out[1]) <= 1e-12:
        out = out[:1]
    return tuple(out)


def _candidate_relatives(G, kind, A):
    if A is not None:
        R = tuple(sorted({G.element(a) for a in A}))
        if G.identity not in R:
            raise ValueError("relative set must contain the identity")
        return [R]
    if kind == "difference":
        return [tuple(G.elements)]
    if kind in ("relative", "divisible"):
        return [tuple(sorted(H)) for H in G.subgroups]
    if kind == "partial":
        return [None]  # depends on S
    raise ValueError("general-bidifference search needs an explicit relative set")


def search(G, m, kind, A=None):
    """Exhaustively list m-subsets of G satisfying ``kind``.

    Subsets come in lexicographic order of their sorted index tuples; with
    several candidate relative sets (A omitted for relative/divisible kinds),
    every subgroup is tried for each subset, in subgroup order.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    n = G.order
    if n > MAX_SEARCH_ORDER:
        raise ValueError(f"|G|={n} exceeds the search cap {MAX_SEARCH_ORDER}")
    if not 1 <= m <= n:
        raise ValueError(f"subset size {m} out of range for |G|={n}")
    if comb(n, m) > MAX_SEARCH_SUBSETS:
        raise ValueError(f"C({n},{m}) subsets exceeds the search cap")
    if A is not None and kind == "partial":
        raise ValueError("partial difference sets fix their own relative set")
    relatives = _candidate_relatives(G, kind, A)
    elems = G.elements
    diff = np.array([[G.index(G.sub(x, y)) for y in elems] for x in elems])
    masks = []
    for R in relatives:
        if R is None:
            continue
        idx = [G.index(a) for a in R]
        inner = np.zeros(n, bool)
        inner[idx] = True
        inner[0] = False
        outer = ~inner
        outer[0] = False
        masks.append((R, inner, outer, G.is_subgroup(R)))

    off = ~np.eye(m, dtype=bool)
    out = []
    combos = itertools.combinations(range(n), m)
    while True:
        chunk = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, _BATCH)), dtype=np.int64)
        if chunk.size == 0:
            break
        subs = chunk.reshape(-1, m)
        B = subs.shape[0]
        d = diff[subs[:, :, None], subs[:, None, :]][:, off]
        flat = (np.arange(B)[:, None] * n + d).ravel()
        counts = np.bincount(flat, minlength=B * n).reshape(B, n)
        for b, R in sorted(_scan(counts, subs, masks, kind, n), key=lambda h: h[0]):
            S = [elems[i] for i in subs[b]]
            if R is None:
                R = sorted(set(S) | {G.identity})
            out.append(bidifference_set(G, S, R))
    return out


def _scan(counts, subs, masks, kind, n):
    """Yield (row, relative set) for each hit; sorting by row is stable."""
    if kind == "partial":
        for b in range(counts.shape[0]):
            inner = np.zeros(n, bool)
            inner[subs[b]] = True
            inner[0] = False
            outer = ~inner
            outer[0] = False
            if _uniform(counts[b], inner) and _uniform(counts[b], outer):
                yield b, None
        return
    for R, inner, outer, is_sub in masks:
        if not is_sub and kind in ("relative", "divisible"):
            continue
        ok_in, lam = _uniform_rows(counts, inner)
        ok_out, mu = _uniform_rows(counts, outer)
        good = ok_in & ok_out
        if not outer.any():
            mu = lam
        if kind == "difference":
            good &= lam == mu
        elif kind == "relative":
            good &= lam == 0
        for b in np.flatnonzero(good):
            yield int(b), R


def _uniform(row, mask):
    vals = row[mask]
    return vals.size == 0 or bool(np.all(vals == vals[0]))


def _uniform_rows(counts, mask):
    if not mask.any():
        return np.ones(counts.shape[0], bool), np.zeros(counts.shape[0], np.int64)
    block = counts[:, mask]
    first = block[:, 0]
    return np.all(block == first[:, None], axis=1), first
