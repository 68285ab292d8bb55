"""Frames as synthesis matrices, and the predicates that certify them."""

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .numerics import DEFAULT_TOL, Tolerance, as_matrix, cluster_labels


class FrameError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Frame:
    """An m x n synthesis matrix whose columns are the frame vectors."""

    synthesis: np.ndarray
    field_tag: str = "complex"
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        F = as_matrix(self.synthesis)
        m, n = F.shape
        if m < 1 or n < m:
            raise FrameError(f"need n >= m >= 1, got m={m}, n={n}")
        if self.field_tag not in ("real", "complex"):
            raise FrameError(f"unknown field tag {self.field_tag!r}")
        if self.field_tag == "real" and np.abs(F.imag).max() > self.tol.eq_tol:
            raise FrameError("frame tagged real has non-real entries")
        F.setflags(write=False)
        object.__setattr__(self, "synthesis", F)

    @classmethod
    def from_array(cls, F, tol=DEFAULT_TOL, field_tag=None):
        """Wrap an array, tagging it real when its imaginary part vanishes."""
        F = as_matrix(F)
        if field_tag is None:
            field_tag = "real" if np.abs(F.imag).max(initial=0.0) <= tol.eq_tol else "complex"
        return cls(F, field_tag, tol)

    @property
    def m(self):
        return self.synthesis.shape[0]

    @property
    def n(self):
        return self.synthesis.shape[1]

    def gram(self):
        return self.synthesis.conj().T @ self.synthesis

    def with_tol(self, tol):
        return Frame(self.synthesis, self.field_tag, tol)


@dataclass(frozen=True)
class AngleReport:
    angles: tuple
    multiplicities: tuple | None
    coherence: float | None
    welch: float | None
    # per-vector angle counts, one row per frame vector
    counts: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def d(self):
        return len(self.angles)

    @property
    def equidistributed(self):
        return self.multiplicities is not None


@dataclass(frozen=True)
class Classification:
    kind: str  # ETF, BTF, d-angular, not-tight, not-unit-norm
    d: int | None = None
    tightness: float | None = None
    report: AngleReport | None = None

    def __str__(self):
        if self.kind == "d-angular":
            return f"{self.d}-angular"
        return self.kind


def welch_constant(n, m):
    if not n > m >= 1:
        raise ValueError(f"Welch constant needs n > m >= 1, got n={n}, m={m}")
    return sqrt((n - m) / (m * (n - 1)))


def is_unit_norm(F):
    norms = np.linalg.norm(F.synthesis, axis=0)
    return bool(np.all(np.abs(norms - 1.0) <= F.tol.eq_tol))


def tightness(F):
    """The tightness parameter a with F F* = a I, or None if F is not tight."""
    S = F.synthesis @ F.synthesis.conj().T
    if is_unit_norm(F):
        a = F.n / F.m
    else:
        a = float(np.trace(S).real) / F.m
        if a <= 0:
            return None
    residual = np.abs(S - a * np.eye(F.m)).max()
    return a if residual <= F.tol.eq_tol else None


def is_flat(F):
    return bool(np.all(np.abs(np.abs(F.synthesis) - 1 / sqrt(F.m)) <= F.tol.eq_tol))


def angle_report(F):
    """Frame angles, coherence and (when equidistributed) multiplicities."""
    if not is_unit_norm(F):
        raise FrameError("angle report needs a unit-norm frame")
    n = F.n
    G = np.abs(F.gram())
    iu = np.triu_indices(n, 1)
    reps, labels = cluster_labels(G[iu], F.tol)
    d = len(reps)
    counts = np.zeros((n, d), dtype=int)
    if d:
        L = np.full((n, n), -1)
        L[iu] = labels
        L[iu[1], iu[0]] = labels
        for l in range(d):
            counts[:, l] = (L == l).sum(axis=1)
    multiplicities = None
    if d and np.all(counts == counts[0]):
        multiplicities = tuple(int(c) for c in counts[0])
    welch = welch_constant(n, F.m) if n > F.m else None
    return AngleReport(
        angles=tuple(float(r) for r in reps),
        multiplicities=multiplicities,
        coherence=float(reps[-1]) if d else None,
        welch=welch,
        counts=counts,
    )


def btf_multiplicities(n, m, a1, a2, tol=DEFAULT_TOL):
    """Angle multiplicities forced on a biangular (n, m)-frame by its angles."""
    if abs(a1 - a2) <= tol.eq_tol:
        raise ValueError("degenerate angle pair")
    if not n > m:
        raise ValueError("need n > m")
    w2 = (n - m) / (m * (n - 1))
    t1 = (n - 1) * (a2**2 - w2) / (a2**2 - a1**2)
    t2 = (n - 1) * (a1**2 - w2) / (a1**2 - a2**2)
    r1, r2 = round(t1), round(t2)
    slack = tol.eq_tol * (n - 1)
    if abs(t1 - r1) > slack or abs(t2 - r2) > slack:
        raise ValueError(f"non-integral multiplicities ({t1:.6g}, {t2:.6g})")
    if r1 + r2 != n - 1 or r1 < 0 or r2 < 0:
        raise ValueError(f"inconsistent multiplicities ({r1}, {r2}) for n={n}")
    return r1, r2


def row_identity_check(F):
    """Each vector's squared inner products (itself included) sum to n/m."""
    sums = (np.abs(F.gram()) ** 2).sum(axis=1)
    return bool(np.all(np.abs(sums - F.n / F.m) <= F.n * F.tol.eq_tol))


def classify(F):
    if not is_unit_norm(F):
        return Classification("not-unit-norm")
    a = tightness(F)
    if a is None:
        return Classification("not-tight")
    report = angle_report(F)
    d = report.d
    if d == 1 and report.welch is not None and abs(report.coherence - report.welch) <= F.tol.cluster_tol:
        return Classification("ETF", 1, a, report)
    if d == 2:
        return Classification("BTF", 2, a, report)
    return Classification("d-angular", d, a, report)
