"""Harmonic frames: rows of an abelian group's character table."""

from dataclasses import dataclass

import numpy as np

from .diffsets import predicted_harmonic_angles
from .frames import Frame, angle_report
from .numerics import DEFAULT_TOL, same_values

PREDICTABLE_KINDS = ("difference", "divisible", "relative")


def harmonic_frame(G, S, tol=DEFAULT_TOL):
    """The m x n harmonic frame of G generated by S, columns unit-norm.

    Rows follow sorted order of S, columns sorted order of G.
    """
    try:
        rows = sorted({G.element(a) for a in S})
    except ValueError as exc:
        raise ValueError(f"S is not a subset of {G!r}: {exc}") from None
    if not rows:
        raise ValueError("S must be nonempty")
    A = np.array(rows, dtype=float)  # m x k
    B = np.array(G.elements, dtype=float)  # n x k
    phase = (A / np.array(G.factors)) @ B.T
    H = np.exp(2j * np.pi * phase) / np.sqrt(len(rows))
    return Frame(H, "complex", tol)


@dataclass(frozen=True)
class HarmonicCheck:
    frame: Frame
    predicted: tuple | None
    empirical: tuple
    match: bool | None  # None when no closed form applies (partial, general)


def harmonic_from_diffset(D, tol=DEFAULT_TOL):
    F = harmonic_frame(D.group, D.S, tol)
    empirical = angle_report(F).angles
    if D.kind in PREDICTABLE_KINDS:
        predicted = predicted_harmonic_angles(D.params)
        return HarmonicCheck(F, predicted, empirical, same_values(predicted, empirical, tol))
    return HarmonicCheck(F, None, empirical, None)
