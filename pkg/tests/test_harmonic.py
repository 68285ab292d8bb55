from math import sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from btfkit.algebra import AbelianGroup, character
from btfkit.diffsets import bidifference_set, picket_fence, simplectic, singer
from btfkit.frames import classify, is_flat, tightness
from btfkit.harmonic import harmonic_frame, harmonic_from_diffset


def test_character_table_oracle():
    # entries equal the character values divided by sqrt(m)
    G = AbelianGroup.parse("2x3")
    S = [(0, 1), (1, 2)]
    F = harmonic_frame(G, S).synthesis
    for i, a in enumerate(sorted(S)):
        for j, b in enumerate(G.elements):
            assert F[i, j] == pytest.approx(character(G, a, b) / sqrt(2))


def test_cyclic_is_dft_rows():
    n, S = 7, [1, 2, 4]
    F = harmonic_frame(AbelianGroup.cyclic(n), S).synthesis
    dft = np.exp(2j * np.pi * np.outer(S, np.arange(n)) / n) / sqrt(3)
    assert np.allclose(F, dft)


def test_singleton_subset():
    F = harmonic_frame(AbelianGroup.cyclic(5), [0])
    assert np.allclose(F.synthesis, 1)
    assert classify(F).report.coherence == pytest.approx(1)


def test_examples():
    c = classify(harmonic_frame(AbelianGroup.cyclic(7), [1, 2, 4]))
    assert c.kind == "ETF" and c.report.coherence == pytest.approx(sqrt(2) / 3)
    c = classify(harmonic_frame(AbelianGroup.cyclic(8), picket_fence(3).S))
    assert c.kind == "BTF" and c.report.angles == pytest.approx((1 / 3, 1 / sqrt(3)), abs=1e-7)


def test_guards():
    with pytest.raises(ValueError):
        harmonic_frame(AbelianGroup.cyclic(4), [])
    with pytest.raises(ValueError):
        harmonic_frame(AbelianGroup.cyclic(4), [5])


@pytest.mark.parametrize("D,kind,angles", [
    (simplectic(4), "ETF", (1 / 3,)),
    (singer(3), "ETF", (sqrt(3) / 4,)),
    (picket_fence(4), "BTF", (1 / 4, 1 / 2)),
    (picket_fence(3), "BTF", (1 / 3, 1 / sqrt(3))),
    (singer(2), "ETF", (sqrt(2) / 3,)),
])
def test_from_diffset(D, kind, angles):
    h = harmonic_from_diffset(D)
    assert h.match is True
    assert h.predicted == pytest.approx(angles, abs=1e-9)
    assert classify(h.frame).kind == kind


def test_partial_has_no_prediction():
    D = bidifference_set(AbelianGroup.cyclic(5), [1, 4], [0, 1, 4])
    h = harmonic_from_diffset(D)
    assert h.predicted is None and h.match is None and h.empirical


@given(st.integers(2, 16), st.data())
def test_harmonic_frames_are_flat_and_tight(n, data):
    S = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    F = harmonic_frame(AbelianGroup.cyclic(n), S)
    assert is_flat(F)
    assert tightness(F) == pytest.approx(n / len(S))


@pytest.mark.parametrize("n", [7, 8, 12, 13, 15])
def test_certification_by_kind(n):
    from btfkit.diffsets import search
    G = AbelianGroup.cyclic(n)
    for m in range(2, n - 1):
        for D in search(G, m, "divisible"):
            h = harmonic_from_diffset(D)
            F = h.frame
            assert np.abs(F.synthesis @ F.synthesis.conj().T - n / m * np.eye(m)).max() <= n * 1e-9
            c = classify(F)
            if D.kind == "difference":
                assert c.kind == "ETF"
            elif len(h.predicted) == 2:
                assert c.kind == "BTF" and h.match
