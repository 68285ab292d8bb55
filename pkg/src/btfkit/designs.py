"""Steiner matrices: transposed incidence matrices of 2-(v, k, 1) designs."""

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteField, is_prime_power

MAX_POINTS = 256


class SteinerError(ValueError):
    """A Steiner condition fails; ``condition`` names it, ``witness`` the indices."""

    def __init__(self, message, condition=None, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True, eq=False)
class SteinerMatrix:
    data: np.ndarray
    v: int
    k: int
    s: int
    m: int

    def __eq__(self, other):
        return isinstance(other, SteinerMatrix) and np.array_equal(self.data, other.data)

    def column_support(self, j):
        return np.flatnonzero(self.data[:, j])


def verify_steiner(data):
    A = np.asarray(data)
    if A.ndim != 2 or A.size == 0:
        raise SteinerError("Steiner data must be a nonempty 2-D array", "shape")
    if not np.all((A == 0) | (A == 1)):
        raise SteinerError("entries must be 0 or 1", "binary")
    A = A.astype(np.int8)
    m, v = A.shape
    rows = A.sum(axis=1)
    k = int(rows[0])
    if k < 2 or k > v:
        raise SteinerError(f"row 0 has {k} ones; need 2 <= k <= v", "row-sum", (0,))
    if (v - 1) % (k - 1) or (v * (v - 1)) % (k * (k - 1)):
        raise SteinerError(f"(v,k)=({v},{k}) has non-integral parameters", "integrality")
    s = (v - 1) // (k - 1)
    expected_m = v * (v - 1) // (k * (k - 1))
    if m != expected_m:
        raise SteinerError(f"{m} rows, expected {expected_m} for (v,k)=({v},{k})", "row-count")
    bad = np.flatnonzero(rows != k)
    if bad.size:
        i = int(bad[0])
        raise SteinerError(f"row {i} has {rows[i]} ones, expected {k}", "row-sum", (i,))
    cols = A.sum(axis=0)
    bad = np.flatnonzero(cols != s)
    if bad.size:
        j = int(bad[0])
        raise SteinerError(f"column {j} has {cols[j]} ones, expected {s}", "column-sum", (j,))
    dots = A.T.astype(int) @ A.astype(int)
    np.fill_diagonal(dots, 1)
    bad = np.argwhere(dots != 1)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise SteinerError(f"columns {i} and {j} have dot product {dots[i, j]}", "column-pair", (i, j))
    A.setflags(write=False)
    return SteinerMatrix(A, v, k, s, m)


def _incidence(points, blocks):
    index = {p: i for i, p in enumerate(points)}
    rows = sorted(tuple(sorted(index[p] for p in b)) for b in blocks)
    A = np.zeros((len(rows), len(points)), dtype=np.int8)
    for r, cols in enumerate(rows):
        A[r, list(cols)] = 1
    return A


def _field(q):
    pa = is_prime_power(q) if q >= 2 else None
    if pa is None:
        raise ValueError(f"q={q} is not a prime power")
    return FiniteField(*pa)


def _normalized(F, vec):
    lead = next(x for x in vec if x)
    inv = F.inverse(lead)
    return tuple(F.mul(inv, x) for x in vec)


def affine_steiner(q, a):
    """Lines of AG(a, q) against its points: a (q^a, q)-Steiner matrix."""
    if a < 2:
        raise ValueError("need a >= 2")
    if q**a > MAX_POINTS:
        raise ValueError(f"q^a = {q**a} exceeds the point cap {MAX_POINTS}")
    F = _field(q)
    points = list(itertools.product(range(q), repeat=a))
    directions = sorted({_normalized(F, d) for d in points if any(d)})
    blocks = set()
    for d in directions:
        seen = set()
        for p in points:
            if p in seen:
                continue
            line = frozenset(tuple(F.add(x, F.mul(t, y)) for x, y in zip(p, d)) for t in range(q))
            seen |= line
            blocks.add(line)
    return verify_steiner(_incidence(points, blocks))


def projective_steiner(q, a):
    """Lines of PG(a, q) against its points."""
    if a < 2:
        raise ValueError("need a >= 2")
    v = (q ** (a + 1) - 1) // (q - 1) if q >= 2 else 0
    if v > MAX_POINTS:
        raise ValueError(f"{v} points exceeds the cap {MAX_POINTS}")
    F = _field(q)
    points = sorted({_normalized(F, x) for x in itertools.product(range(q), repeat=a + 1) if any(x)})
    blocks = set()
    for P, Q in itertools.combinations(points, 2):
        span = set()
        for alpha, beta in itertools.product(range(q), repeat=2):
            if alpha or beta:
                w = tuple(F.add(F.mul(alpha, x), F.mul(beta, y)) for x, y in zip(P, Q))
                span.add(_normalized(F, w))
        blocks.add(frozenset(span))
    return verify_steiner(_incidence(points, blocks))


def pair_steiner(v):
    """All 2-subsets of v points: the (v, 2)-Steiner matrix."""
    if v < 2:
        raise ValueError("need v >= 2")
    return verify_steiner(_incidence(list(range(v)), itertools.combinations(range(v), 2)))


def save_steiner(S):
    lines = [f"STEINER {S.m} {S.v}"]
    lines += ["".join(str(int(x)) for x in row) for row in S.data]
    return "\n".join(lines) + "\n"


def load_steiner(text):
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise SteinerError("empty Steiner file", "format")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "STEINER":
        raise SteinerError(f"bad header {lines[0]!r}", "format")
    try:
        m, v = int(head[1]), int(head[2])
    except ValueError:
        raise SteinerError(f"bad header {lines[0]!r}", "format") from None
    body = lines[1:]
    if len(body) != m:
        raise SteinerError(f"expected {m} rows, found {len(body)}", "format")
    for i, row in enumerate(body):
        if len(row) != v or set(row) - {"0", "1"}:
            raise SteinerError(f"row {i} is not {v} characters of 0/1", "format", (i,))
    return verify_steiner(np.array([[int(c) for c in row] for row in body], dtype=np.int8))
