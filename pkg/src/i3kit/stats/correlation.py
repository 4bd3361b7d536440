"""Pearson, Spearman and first-order partial correlations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ranktests import midranks
from .special import t_two_sided_p


@dataclass(frozen=True)
class Correlation:
    r: float
    p_value: float
    n: int


def _check(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d sequences of equal length")
    if len(x) < 3:
        raise ValueError("need at least three observations")
    return x, y


def _r_with_p(x: np.ndarray, y: np.ndarray) -> Correlation:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise ValueError("correlation undefined for zero-variance input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    n = len(x)
    if abs(r) >= 1.0:
        return Correlation(r, 0.0, n)
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return Correlation(r, t_two_sided_p(t, n - 2), n)


def pearson(x: Sequence[float], y: Sequence[float]) -> Correlation:
    return _r_with_p(*_check(x, y))


def spearman(x: Sequence[float], y: Sequence[float]) -> Correlation:
    """Pearson correlation of tie-averaged ranks."""
    x, y = _check(x, y)
    return _r_with_p(midranks(x), midranks(y))


def partial_correlation(r_xy: float, r_xz: float, r_yz: float) -> float:
    """Correlation of x and y controlling for z."""
    if abs(r_xz) >= 1 or abs(r_yz) >= 1:
        raise ValueError("control correlations must be strictly inside (-1, 1)")
    return (r_xy - r_xz * r_yz) / math.sqrt((1 - r_xz ** 2) * (1 - r_yz ** 2))
