"""A smooth one-parameter family of real (6, 3) biangular tight frames."""

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np

from .frames import Frame
from .numerics import DEFAULT_TOL, same_values

# t -> infinity: the canonical basis of R^3 together with its negatives
LIMIT_FRAME = np.array([
    [0, 0, 0, 0, 1, -1],
    [0, 0, 1, -1, 0, 0],
    [1, -1, 0, 0, 0, 0],
], dtype=float)


def _check(t):
    if not t >= 1:
        raise ValueError(f"curve parameter must be >= 1, got {t}")


def curve_frame(t, tol=DEFAULT_TOL):
    _check(t)
    a = 1 / t**2
    b = sqrt((t**4 - 1) / t**4)
    F = np.array([
        [a, a, 0, 0, b, -b],
        [0, 0, b, -b, a, a],
        [b, -b, a, a, 0, 0],
    ])
    return Frame(F, "real", tol)


def curve_angles(t):
    """Closed-form angle set at t, sorted; a singleton where both agree."""
    _check(t)
    u = t**4
    vals = sorted((abs(2 - u) / u, sqrt(u - 1) / u))
    if vals[1] - vals[0] <= 1e-15:
        return (vals[0],)
    return tuple(vals)


def etf_parameter():
    return ((5 + sqrt(5)) / 2) ** 0.25


def etf_parameters():
    """Both parameters where the two angles coincide (each gives angle 1/sqrt 5).

    Besides the larger root, t^4 = (5 - sqrt 5)/2 also solves
    |2 - t^4| = sqrt(t^4 - 1) on the branch t^4 < 2.
    """
    return (((5 - sqrt(5)) / 2) ** 0.25, etf_parameter())


@dataclass(frozen=True)
class InequivalenceReport:
    pairs: tuple  # (t, t', inequivalent)
    squared_angles: tuple  # (t, squared angles at t)

    @property
    def all_inequivalent(self):
        return all(flag for _, _, flag in self.pairs)


def inequivalence_witness(grid, tol=DEFAULT_TOL):
    grid = [float(t) for t in grid]
    for t in grid:
        _check(t)
    if len(set(grid)) != len(grid):
        raise ValueError("grid values must be pairwise distinct")
    angles = {t: curve_angles(t) for t in grid}
    pairs = tuple((s, t, not same_values(angles[s], angles[t], tol)) for s, t in combinations(grid, 2))
    squares = tuple((t, tuple(x * x for x in angles[t])) for t in grid)
    return InequivalenceReport(pairs, squares)
