"""Observed-versus-expected tests with chi-square standardized residuals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .ranktests import critical_z

MIN_EXPECTED = 5


class Mark(str, Enum):
    PLUS_PLUS = "++"
    PLUS = "+"
    NONE = ""
    MINUS = "-"
    MINUS_MINUS = "--"
    UNRELIABLE = "~"


@dataclass(frozen=True)
class ZTestOutcome:
    observed: float
    expected: float
    z: float | None
    mark: Mark


def z_residual(observed, expected, alphas: tuple[float, float] = (0.05, 0.01)) -> ZTestOutcome:
    """``(observed - expected) / sqrt(expected)`` with a significance mark.

    Expectations below five are flagged unreliable and get no z. The
    statistic is not scale-free: multiplying both inputs by c scales z
    by sqrt(c), so callers must fix the unit (raw sums here).
    """
    observed, expected = float(observed), float(expected)
    if expected < 0:
        raise ValueError("expected value must be non-negative")
    if expected < MIN_EXPECTED:
        return ZTestOutcome(observed, expected, None, Mark.UNRELIABLE)
    z = (observed - expected) / math.sqrt(expected)
    loose, strict = alphas
    if abs(z) >= critical_z(strict):
        mark = Mark.PLUS_PLUS if z > 0 else Mark.MINUS_MINUS
    elif abs(z) >= critical_z(loose):
        mark = Mark.PLUS if z > 0 else Mark.MINUS
    else:
        mark = Mark.NONE
    return ZTestOutcome(observed, expected, z, mark)
