"""Construction and certification of biangular and equiangular tight frames."""

from .frames import Frame, angle_report, classify, tightness, welch_constant
from .numerics import DEFAULT_TOL, Tolerance

__all__ = ["Frame", "Tolerance", "DEFAULT_TOL", "angle_report", "classify", "tightness", "welch_constant"]
__version__ = "0.1.0"
