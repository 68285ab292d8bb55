from collections import Counter
from itertools import combinations
from math import sqrt

import pytest
from hypothesis import given, strategies as st

from btfkit.algebra import AbelianGroup
from btfkit.diffsets import (
    BidifferenceError, bidifference_set, picket_fence, predicted_harmonic_angles, search, simplectic,
    singer, verify_bidifference,
)


def brute_counts(n, S):
    return Counter((x - y) % n for x in S for y in S if x != y)


def brute_params(n, S, A):
    """(lambda, mu) by direct counting on Z_n, or None."""
    c = brute_counts(n, S)
    inner = {c[a] for a in A if a}
    outer = {c[b] for b in range(n) if b not in A}
    if len(inner) > 1 or len(outer) > 1:
        return None
    lam = inner.pop() if inner else 0
    mu = outer.pop() if outer else lam
    return lam, mu


def test_verify_examples():
    Z7 = AbelianGroup.cyclic(7)
    assert verify_bidifference(Z7, [1, 2, 4], Z7.elements) == (1, 1)
    D = bidifference_set(AbelianGroup.cyclic(3), [0, 1], [0])
    assert D.params == (3, 2, 1, 0, 1) and D.kind == "relative"
    with pytest.raises(BidifferenceError) as err:
        bidifference_set(AbelianGroup.cyclic(5), [0, 1])
    assert err.value.count in (0, 1)


def test_relative_set_needs_identity():
    with pytest.raises(ValueError):
        bidifference_set(AbelianGroup.cyclic(7), [1, 2, 4], [1, 2])


def test_kinds():
    Z7 = AbelianGroup.cyclic(7)
    assert bidifference_set(Z7, [1, 2, 4]).kind == "difference"
    assert picket_fence(3).kind == "relative"
    # Z_5 quadratic residues: partial difference set with A = S + {0}
    D = bidifference_set(AbelianGroup.cyclic(5), [1, 4], [0, 1, 4])
    assert D.kind == "partial" and D.params[3:] == (0, 1)


def test_simplectic():
    assert simplectic(4).S == ((1,), (2,), (3,)) and simplectic(4).params[3] == 2
    assert simplectic(2).S == ((1,),) and simplectic(2).params[3] == 0
    assert simplectic(5).params[:2] == (5, 4) and simplectic(5).params[3] == 3
    with pytest.raises(ValueError):
        simplectic(1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_singer(q):
    D = singer(q)
    v = q * q + q + 1
    assert D.params == (v, q + 1, v, 1, 1)
    assert brute_params(v, [s[0] for s in D.S], set(range(v))) == (1, 1)


def test_singer_q3_equivalent_to_known_set():
    # some translate/multiple of {0,1,3,9} in Z_13
    S = {s[0] for s in singer(3).S}
    known = {0, 1, 3, 9}
    found = any({(u * x + t) % 13 for x in known} == S for u in range(1, 13) for t in range(13))
    assert found


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_picket_fence(q):
    D = picket_fence(q)
    n = q * q - 1
    assert D.params == (n, q, q - 1, 0, 1)
    A = {a[0] for a in D.A}
    assert A == set(range(0, n, q + 1))
    assert brute_params(n, [s[0] for s in D.S], A) == (0, 1)


def test_construction_guards():
    for bad in (6, 1, 32):
        with pytest.raises(ValueError):
            singer(bad)
        with pytest.raises(ValueError):
            picket_fence(bad)


def test_predicted_angles_examples():
    assert predicted_harmonic_angles(picket_fence(3).params) == pytest.approx((1 / 3, 1 / sqrt(3)))
    assert predicted_harmonic_angles(singer(2).params) == pytest.approx((sqrt(2) / 3,))
    for n in range(3, 9):
        assert predicted_harmonic_angles(simplectic(n).params) == pytest.approx((1 / (n - 1),))


def test_search_examples():
    hits = search(AbelianGroup.cyclic(7), 3, "difference")
    assert ((1,), (2,), (4,)) in [D.S for D in hits]
    assert search(AbelianGroup.cyclic(5), 2, "difference") == []
    Z3 = AbelianGroup.cyclic(3)
    assert ((0,), (1,)) in [D.S for D in search(Z3, 2, "relative", [0])]


def test_search_guards():
    with pytest.raises(ValueError):
        search(AbelianGroup.cyclic(7), 3, "nonsense")
    with pytest.raises(ValueError):
        search(AbelianGroup.cyclic(7), 8, "difference")
    with pytest.raises(ValueError):
        search(AbelianGroup.cyclic(41), 2, "difference")


@pytest.mark.parametrize("n", range(2, 11))
def test_search_matches_brute_force(n):
    G = AbelianGroup.cyclic(n)
    subgroups = [sorted(g[0] for g in H) for H in G.subgroups]
    for m in range(1, n + 1):
        expected = []
        for S in combinations(range(n), m):
            for A in subgroups:
                if brute_params(n, S, set(A)) is not None:
                    expected.append((S, tuple(A)))
        got = [(tuple(s[0] for s in D.S), tuple(a[0] for a in D.A)) for D in search(G, m, "divisible")]
        assert got == expected
        diff = [S for S in combinations(range(n), m) if len(set(brute_counts(n, S)[g] for g in range(1, n))) <= 1]
        assert [tuple(s[0] for s in D.S) for D in search(G, m, "difference")] == diff


def test_search_partial_matches_brute_force():
    n = 13
    G = AbelianGroup.cyclic(n)
    got = {tuple(s[0] for s in D.S) for D in search(G, 6, "partial")}
    expected = set()
    for S in combinations(range(n), 6):
        if brute_params(n, S, set(S) | {0}) is not None:
            expected.add(S)
    assert got == expected
    assert (1, 3, 4, 9, 10, 12) in got  # quadratic residues


def test_search_on_product_group():
    G = AbelianGroup.parse("2x2")
    hits = search(G, 3, "difference")
    assert len(hits) == 4 and all(D.params[3:] == (2, 2) for D in hits)


@given(st.integers(2, 12), st.data())
def test_verification_agrees_with_counting(n, data):
    S = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    G = AbelianGroup.cyclic(n)
    for H in G.subgroups:
        A = {a[0] for a in H}
        expect = brute_params(n, S, A)
        if expect is None:
            with pytest.raises(BidifferenceError):
                bidifference_set(G, S, H)
        else:
            D = bidifference_set(G, S, H)
            assert D.params[3:] == expect
            # counting identity: m(m-1) = (l-1) lambda + (n-l) mu
            _, m, l, lam, mu = D.params
            assert m * (m - 1) == (l - 1) * lam + (n - l) * mu


@pytest.mark.parametrize("n,m", [(7, 3), (8, 3), (13, 4), (15, 4), (16, 6)])
def test_search_closed_under_translation(n, m):
    G = AbelianGroup.cyclic(n)
    hits = {(D.S, D.A) for D in search(G, m, "divisible")}
    for S, A in hits:
        for t in range(n):
            moved = tuple(sorted(((s[0] + t) % n,) for s in S))
            assert (moved, A) in hits


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_constructions_counting_identity(q):
    for D in (singer(q), picket_fence(q)):
        n, m, l, lam, mu = D.params
        assert m * (m - 1) == lam * (l - 1) + mu * (n - l)
