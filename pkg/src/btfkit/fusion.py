"""Fusion frames of equal-rank projections and the Plücker embedding."""

from dataclasses import dataclass
from itertools import combinations
from math import comb, sqrt

import numpy as np

from .frames import Frame, classify, is_unit_norm, tightness
from .numerics import DEFAULT_TOL, as_matrix, cluster, det


class ProjectionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Projection:
    matrix: np.ndarray
    rank: int

    @classmethod
    def of(cls, P, tol=DEFAULT_TOL):
        P = as_matrix(P)
        m, k = P.shape
        if m != k:
            raise ProjectionError("projection must be square")
        eps = tol.eq_tol
        if np.abs(P - P.conj().T).max() > eps:
            raise ProjectionError("matrix is not self-adjoint")
        if np.abs(P @ P - P).max() > eps:
            raise ProjectionError("matrix is not idempotent")
        tr = float(np.trace(P).real)
        l = round(tr)
        if abs(tr - l) > m * eps:
            raise ProjectionError(f"trace {tr} is not an integer rank")
        P.setflags(write=False)
        return cls(P, l)

    @property
    def m(self):
        return self.matrix.shape[0]


@dataclass(frozen=True)
class FusionFrame:
    projections: tuple
    tol: object = DEFAULT_TOL

    def __post_init__(self):
        ps = tuple(self.projections)
        if not ps:
            raise ProjectionError("fusion frame needs at least one projection")
        if len({(P.rank, P.m) for P in ps}) != 1:
            raise ProjectionError("projections must share rank and ambient dimension")
        object.__setattr__(self, "projections", ps)

    @property
    def n(self):
        return len(self.projections)

    @property
    def l(self):
        return self.projections[0].rank

    @property
    def m(self):
        return self.projections[0].m


@dataclass(frozen=True, eq=False)
class Generator:
    """An l x m matrix with orthonormal rows; G* G is the projection it generates."""

    matrix: np.ndarray

    @property
    def l(self):
        return self.matrix.shape[0]

    @property
    def m(self):
        return self.matrix.shape[1]

    def projection(self):
        return self.matrix.conj().T @ self.matrix


def verify_tight_fusion(FF):
    a = FF.n * FF.l / FF.m
    total = sum(P.matrix for P in FF.projections)
    resid = np.abs(total - a * np.eye(FF.m)).max()
    return a if resid <= FF.n * FF.tol.eq_tol else None


def trace_products(FF):
    """Matrix of tr(P_i P_j)."""
    n = FF.n
    Ps = np.stack([P.matrix for P in FF.projections])
    flat = Ps.reshape(n, -1)
    # tr(P Q) = sum_ij P_ij Q_ji, and Q_ji = conj(Q_ij) for self-adjoint Q
    return (flat @ flat.conj().T).real


def chordal_angles(FF):
    T = trace_products(FF)
    vals = np.sqrt(np.clip(T[np.triu_indices(FF.n, 1)], 0, None))
    return cluster(vals, FF.tol)


def frame_to_fusion(F):
    if not is_unit_norm(F) or tightness(F) is None:
        raise ValueError("frame must be unit-norm and tight")
    Ps = [Projection.of(np.outer(f, f.conj()), F.tol) for f in F.synthesis.T]
    return FusionFrame(tuple(Ps), F.tol)


def generator(P, tol=DEFAULT_TOL):
    """A canonical generator of P.

    The eigenvalues of P must sit within 10 eq_tol of 0 or 1.  The rows come
    from pivoted Gram-Schmidt on P's columns, each rescaled so its first
    largest-magnitude coordinate is real positive.
    """
    if not isinstance(P, Projection):
        P = Projection.of(P, tol)
    M = P.matrix
    w = np.linalg.eigvalsh(M)
    eps = 10 * tol.eq_tol
    near1 = np.abs(w - 1) <= eps
    if not np.all(near1 | (np.abs(w) <= eps)):
        raise ProjectionError(f"eigenvalues {w} do not cluster at 0 and 1")
    l = int(near1.sum())
    if l != P.rank:
        raise ProjectionError(f"eigenvalue count {l} disagrees with trace rank {P.rank}")
    # pivoted Gram-Schmidt: each step takes the column with the largest
    # residual (lowest index on ties), orthogonalised twice for stability
    R = M.copy()
    rows = []
    for _ in range(l):
        norms = np.linalg.norm(R, axis=0)
        j = int(np.flatnonzero(norms >= norms.max() - tol.eq_tol)[0])
        if norms[j] <= eps:
            raise ProjectionError("could not extract an orthonormal basis of the range")
        r = R[:, j].copy()
        for b in rows:
            r -= (b.conj() @ r) * b
        r /= np.linalg.norm(r)
        rows.append(r)
        R -= np.outer(r, r.conj() @ R)
    out = []
    for r in rows:
        r = r.conj()  # G* G = sum of conj(g)^T g, so rows are conjugated range vectors
        mags = np.abs(r)
        j = int(np.flatnonzero(mags >= mags.max() - tol.eq_tol)[0])
        out.append(r * (abs(r[j]) / r[j]))
    G = np.array(out)
    if np.abs(G.conj().T @ G - M).max() > eps:
        raise ProjectionError("generator does not reproduce the projection")
    G.setflags(write=False)
    return Generator(G)


def plucker(G):
    """All l x l minors of the generator, column subsets in lexicographic order."""
    M = G.matrix if isinstance(G, Generator) else as_matrix(G)
    l, m = M.shape
    return np.array([det(M[:, list(cols)]) for cols in combinations(range(m), l)])


def lifted_plucker(P, tol=DEFAULT_TOL):
    return plucker(generator(P, tol))


# ---- the worked (16, 2, 4) example ------------------------------------------

BASE_GENERATOR = sqrt(2 / 3) * np.array([
    [1, -1 / 2, -1 / 2, 0],
    [0, sqrt(3) / 2, -sqrt(3) / 2, 0],
])

# the cyclic shift c with c^j for j = 0..3
CYCLIC_SHIFT = np.roll(np.eye(4), 1, axis=1)

# diagonal sign representation of Z_2 x Z_2
KLEIN_SIGNS = (
    np.diag([1, 1, 1, 1]),
    np.diag([1, 1, -1, -1]),
    np.diag([1, -1, 1, -1]),
    np.diag([1, -1, -1, 1]),
)

# rows of the (4, 2)-Steiner matrix realised by the example's supports
EXAMPLE_STEINER = np.array([
    [1, 0, 0, 1],
    [1, 0, 1, 0],
    [0, 0, 1, 1],
    [1, 1, 0, 0],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
])


def example_generators():
    """A d_j c_k in (j, k) lexicographic order."""
    A = BASE_GENERATOR
    return [A @ KLEIN_SIGNS[j] @ np.linalg.matrix_power(CYCLIC_SHIFT, k)
            for j in range(4) for k in range(4)]


def build_plucker_example(tol=DEFAULT_TOL):
    """The tight (16, 2, 4) fusion frame and its lifted Plücker image in R^6."""
    A = BASE_GENERATOR
    if np.abs(A @ A.T - np.eye(2)).max() > tol.eq_tol:
        raise ProjectionError("base generator is not 1-tight")
    Ps = tuple(Projection.of(G.T @ G, tol) for G in example_generators())
    FF = FusionFrame(Ps, tol)
    if verify_tight_fusion(FF) is None:
        raise ProjectionError("example fusion frame is not tight")
    cols = np.array([lifted_plucker(P, tol) for P in Ps]).T
    F = Frame.from_array(cols, tol)
    if classify(F).kind != "ETF":
        raise ProjectionError("embedded example is not an ETF")
    return FF, F


def is_plucker_etf(F, FF):
    c = classify(F)
    if c.kind != "ETF":
        raise ValueError("frame is not a certified ETF")
    if FF.l < 2:
        raise ValueError("Plücker ETFs need projections of rank l >= 2")
    if F.m != comb(FF.m, FF.l):
        raise ValueError(f"frame dimension {F.m} != C({FF.m},{FF.l})")
    if F.n != FF.n:
        raise ValueError("frame and fusion frame have different sizes")
    if verify_tight_fusion(FF) is None:
        return False  # a non-tight family cannot lift to this ETF
    ctol = F.tol.cluster_tol
    images = np.array([lifted_plucker(P, F.tol) for P in FF.projections]).T
    cols = F.synthesis
    if np.abs(np.abs(images) - np.abs(cols)).max() > ctol:
        return False
    inner = np.abs(np.sum(images.conj() * cols, axis=0))
    if np.abs(inner - 1).max() > ctol:
        return False
    return bool(np.abs(np.abs(images.conj().T @ images) - np.abs(F.gram())).max() <= ctol)
