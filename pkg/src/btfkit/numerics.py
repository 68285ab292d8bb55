"""Matrix helpers, tolerance policy and value clustering.

Matrices are plain 2-D numpy arrays of complex dtype.  Nothing here is
symbolic: exactness is a matter of comparing against tolerances.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds used by every certification routine.

    ``eq_tol`` governs entrywise and residual comparisons, ``cluster_tol``
    the gap below which two angle values are considered the same.
    """

    eq_tol: float = 1e-9
    cluster_tol: float = 1e-7

    def __post_init__(self):
        if not self.eq_tol > 0:
            raise ValueError("eq_tol must be positive")
        if not self.cluster_tol > 0:
            raise ValueError("cluster_tol must be positive")
        if self.cluster_tol < self.eq_tol:
            raise ValueError("cluster_tol must be >= eq_tol")


DEFAULT_TOL = Tolerance()


def as_matrix(M):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    return M


def conj_transpose(M):
    return as_matrix(M).conj().T


def matmul(A, B):
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape} x {B.shape}")
    return A @ B


def det(M):
    """Determinant by LU factorisation with partial pivoting."""
    M = as_matrix(M)
    n, k = M.shape
    if n != k:
        raise ValueError(f"determinant of non-square {n}x{k} matrix")
    U = M.copy()
    result = 1.0 + 0j
    for c in range(n):
        p = c + int(np.argmax(np.abs(U[c:, c])))
        if U[p, c] == 0:
            return 0j
        if p != c:
            U[[c, p]] = U[[p, c]]
            result = -result
        result *= U[c, c]
        if c + 1 < n:
            factors = U[c + 1:, c] / U[c, c]
            U[c + 1:, c:] -= np.outer(factors, U[c, c:])
    return complex(result)


def _cluster_tol(tol):
    return tol.cluster_tol if isinstance(tol, Tolerance) else float(tol)


def cluster_labels(values, tol=DEFAULT_TOL):
    """Single-linkage clustering of reals.

    Returns ``(representatives, labels)``: the cluster means in increasing
    order, and for each input value the index of its cluster.  Neighbouring
    sorted values merge when their gap is at most ``cluster_tol``.
    """
    gap = _cluster_tol(tol)
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        return np.empty(0), np.empty(0, dtype=int)
    if not np.all(np.isfinite(values)):
        raise ValueError("cannot cluster non-finite values")
    order = np.argsort(values, kind="stable")
    ordered = values[order]
    breaks = np.diff(ordered) > gap
    sorted_labels = np.concatenate([[0], np.cumsum(breaks)])
    count = int(sorted_labels[-1]) + 1
    sums = np.bincount(sorted_labels, weights=ordered, minlength=count)
    sizes = np.bincount(sorted_labels, minlength=count)
    labels = np.empty_like(sorted_labels)
    labels[order] = sorted_labels
    return sums / sizes, labels


def cluster(values, tol=DEFAULT_TOL):
    reps, _ = cluster_labels(values, tol)
    return [float(r) for r in reps]


def same_values(a, b, tol=DEFAULT_TOL):
    """True when two sorted value lists agree elementwise within cluster_tol."""
    gap = _cluster_tol(tol)
    a, b = list(a), list(b)
    return len(a) == len(b) and all(abs(x - y) <= gap for x, y in zip(a, b))
