import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from btfkit.curve import curve_frame, etf_parameter
from btfkit.fusion import BASE_GENERATOR
from btfkit.numerics import (
    DEFAULT_TOL, Tolerance, cluster, cluster_labels, conj_transpose, det, matmul, same_values,
)


def test_tolerance_defaults_and_validation():
    assert (DEFAULT_TOL.eq_tol, DEFAULT_TOL.cluster_tol) == (1e-9, 1e-7)
    with pytest.raises(ValueError):
        Tolerance(0, 1e-7)
    with pytest.raises(ValueError):
        Tolerance(1e-9, -1)
    with pytest.raises(ValueError):
        Tolerance(1e-6, 1e-7)


def test_conj_transpose_examples():
    assert conj_transpose([[1j]])[0, 0] == -1j
    assert np.array_equal(conj_transpose(np.eye(3)), np.eye(3))
    M = np.arange(6.0).reshape(2, 3)
    assert np.array_equal(conj_transpose(M), M.T)


def test_matmul_examples():
    M = np.arange(9).reshape(3, 3)
    assert np.array_equal(matmul(np.eye(3), M), M)
    assert np.array_equal(matmul([[1, 2], [3, 4]], [[1], [1]]), [[3], [7]])
    F = curve_frame(1.0).synthesis
    assert np.allclose(matmul(F, conj_transpose(F)), 2 * np.eye(3))
    with pytest.raises(ValueError):
        matmul(np.eye(2), np.eye(3))


def test_det_examples():
    assert det([[1, 2], [3, 4]]) == pytest.approx(-2)
    assert det(np.eye(4)) == pytest.approx(1)
    assert det(BASE_GENERATOR[:, :2]) == pytest.approx(1 / np.sqrt(3))
    assert det([[0, 0], [0, 1]]) == 0
    with pytest.raises(ValueError):
        det(np.ones((2, 3)))


@given(hnp.arrays(complex, st.tuples(st.integers(1, 5)).map(lambda t: (t[0], t[0])),
                  elements=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)))
def test_det_matches_numpy(M):
    # independent oracle: LAPACK determinant
    expected = np.linalg.det(M)
    assert abs(det(M) - expected) <= 1e-9 * max(1.0, abs(expected), np.abs(M).max() ** M.shape[0])


def test_cluster_examples():
    assert cluster([0.5, 0.5 + 1e-12, 0.9], 1e-7) == pytest.approx([0.5, 0.9])
    assert cluster([]) == []
    G = np.abs(curve_frame(etf_parameter()).gram())
    vals = cluster(G[np.triu_indices(6, 1)])
    assert len(vals) == 1 and vals[0] == pytest.approx(0.4472136, abs=1e-7)


def test_cluster_gap_equal_to_tol_merges():
    assert len(cluster([0.0, 0.25], 0.25)) == 1
    assert len(cluster([0.0, 0.25], 0.2)) == 2


def test_cluster_rejects_nan():
    with pytest.raises(ValueError):
        cluster([0.1, float("nan")])


@given(st.lists(st.floats(0, 1), max_size=40))
def test_cluster_labels_consistent(values):
    reps, labels = cluster_labels(values)
    assert list(reps) == sorted(reps)
    assert len(labels) == len(values)
    for x, lab in zip(values, labels):
        assert reps[lab] - 1e-6 <= x or abs(reps[lab] - x) <= 1e-6 * len(values)
    # clusters are separated by more than the gap
    assert all(b - a > 1e-7 for a, b in zip(reps, reps[1:])) or len(reps) < 2


@given(st.lists(st.floats(0, 1), max_size=30), st.permutations(range(30)))
def test_cluster_order_invariant(values, perm):
    shuffled = [values[i] for i in perm if i < len(values)]
    assert cluster(values) == pytest.approx(cluster(shuffled))


def test_same_values():
    assert same_values([0.1, 0.2], [0.1 + 1e-9, 0.2])
    assert not same_values([0.1], [0.1, 0.2])
    assert not same_values([0.1], [0.2])
    assert same_values([0.1], [0.15], 0.1)


@given(hnp.arrays(complex, st.tuples(st.integers(1, 4), st.integers(1, 4)),
                  elements=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)))
def test_conj_transpose_involution(M):
    assert np.array_equal(conj_transpose(conj_transpose(M)), M)


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_det_multiplicative(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    B = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    lhs, rhs = det(A @ B), det(A) * det(B)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_cluster_deterministic():
    vals = np.random.default_rng(1).random(50)
    assert cluster(vals) == cluster(vals)
