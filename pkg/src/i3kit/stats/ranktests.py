"""Rank-based tests on raw citation distributions."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .special import chi_square_sf, normal_quantile, normal_two_sided_p


def midranks(values) -> np.ndarray:
    """1-based ranks with ties given the mean of the ranks they span."""
    x = np.asarray(values)
    order = np.argsort(x, kind="mergesort")
    sorted_x = x[order]
    n = len(x)
    # boundaries of runs of equal values
    new_run = np.concatenate(([True], sorted_x[1:] != sorted_x[:-1], [True]))
    starts = np.flatnonzero(new_run)
    ranks_sorted = np.empty(n, dtype=float)
    for lo, hi in zip(starts[:-1], starts[1:]):
        ranks_sorted[lo:hi] = 0.5 * (lo + hi + 1)
    ranks = np.empty(n, dtype=float)
    ranks[order] = ranks_sorted
    return ranks


def tie_sum(values) -> float:
    """Sum of t^3 - t over groups of tied values."""
    return float(sum(t ** 3 - t for t in Counter(np.asarray(values).tolist()).values() if t > 1))


@dataclass(frozen=True)
class KruskalWallisResult:
    statistic: float
    df: int
    p_value: float


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> KruskalWallisResult:
    """Kruskal-Wallis H on pooled mid-ranks, tie-corrected; chi-square p-value."""
    if len(groups) < 2:
        raise ValueError("need at least two groups")
    if any(len(g) == 0 for g in groups):
        raise ValueError("every group must be non-empty")
    pooled = np.concatenate([np.asarray(g, dtype=float) for g in groups])
    n = len(pooled)
    ranks = midranks(pooled)
    df = len(groups) - 1
    correction = 1.0 - tie_sum(pooled) / (n ** 3 - n) if n > 1 else 0.0
    if correction <= 0:
        return KruskalWallisResult(0.0, df, 1.0)
    h = 0.0
    start = 0
    for g in groups:
        r = ranks[start:start + len(g)].sum()
        h += float(r) ** 2 / len(g)
        start += len(g)
    h = 12.0 / (n * (n + 1)) * h - 3.0 * (n + 1)
    h = max(h / correction, 0.0)
    return KruskalWallisResult(float(h), df, chi_square_sf(float(h), df))


class PairwiseMethod(str, Enum):
    DUNN = "dunn"
    MANN_WHITNEY = "mann_whitney"


def bonferroni_alpha(family_alpha: float, k: int) -> float:
    """Per-comparison level for all k(k-1)/2 pairs among k groups."""
    pairs = k * (k - 1) // 2
    return family_alpha / pairs if pairs else family_alpha


@dataclass(frozen=True)
class PairwiseMatrix:
    labels: tuple[str, ...]
    statistic: np.ndarray
    p_values: np.ndarray
    significant: np.ndarray
    per_comparison_alpha: float
    method: PairwiseMethod

    def non_significant_pairs(self) -> list[tuple[str, str]]:
        k = len(self.labels)
        return [(self.labels[i], self.labels[j])
                for i in range(k) for j in range(i + 1, k) if not self.significant[i, j]]

    def to_csv(self) -> str:
        """Full symmetric matrix of test statistics."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", *self.labels])
        for label, row in zip(self.labels, self.statistic):
            w.writerow([label, *(f"{v:.6f}" for v in row)])
        return buf.getvalue()

    def edges_csv(self) -> str:
        """Edge list of pairs whose distributions do not differ significantly."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["source", "target"])
        w.writerows(self.non_significant_pairs())
        return buf.getvalue()


def dunn_pairwise(groups: Sequence[Sequence[float]], family_alpha: float = 0.05,
                  labels: Sequence[str] | None = None) -> PairwiseMatrix:
    """Dunn's multiple comparisons on mid-ranks pooled over all groups.

    ``statistic[i, j]`` is ``(Rbar_i - Rbar_j) / se_ij``; a pair is significant
    when its two-sided p falls below ``family_alpha / (k(k-1)/2)``.
    """
    k = len(groups)
    if k < 1 or any(len(g) == 0 for g in groups):
        raise ValueError("groups must be non-empty")
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(k))
    pooled = np.concatenate([np.asarray(g, dtype=float) for g in groups])
    n = len(pooled)
    ranks = midranks(pooled)
    sizes = np.array([len(g) for g in groups], dtype=float)
    bounds = np.concatenate(([0], np.cumsum(sizes).astype(int)))
    mean_ranks = np.array([ranks[bounds[i]:bounds[i + 1]].mean() for i in range(k)])
    spread = n * (n + 1) / 12.0 - (tie_sum(pooled) / (12.0 * (n - 1)) if n > 1 else 0.0)
    alpha = bonferroni_alpha(family_alpha, k)

    stat = np.zeros((k, k))
    pvals = np.ones((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            se = math.sqrt(max(spread, 0.0) * float(1.0 / sizes[i] + 1.0 / sizes[j]))
            z = float(mean_ranks[i] - mean_ranks[j]) / se if se > 0 else 0.0
            stat[i, j], stat[j, i] = z, -z
            pvals[i, j] = pvals[j, i] = normal_two_sided_p(z)
    significant = pvals < alpha
    np.fill_diagonal(significant, False)
    return PairwiseMatrix(labels, stat, pvals, significant, alpha, PairwiseMethod.DUNN)


@dataclass(frozen=True)
class MannWhitneyResult:
    u: float
    z: float
    p_value: float
    significant: bool


def mann_whitney(a: Sequence[float], b: Sequence[float], alpha: float = 0.05,
                 continuity: bool = False) -> MannWhitneyResult:
    """Two-sided Mann-Whitney U with the tie-corrected normal approximation.

    ``u`` is ``min(U_a, U_b)`` so ``z`` is never positive.
    """
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        raise ValueError("both samples must be non-empty")
    pooled = np.concatenate([np.asarray(a, dtype=float), np.asarray(b, dtype=float)])
    n = na + nb
    ranks = midranks(pooled)
    u_a = float(ranks[:na].sum()) - na * (na + 1) / 2.0
    u = min(u_a, na * nb - u_a)
    mean = na * nb / 2.0
    var = na * nb / 12.0 * ((n + 1) - tie_sum(pooled) / (n * (n - 1)))
    if var <= 0:
        return MannWhitneyResult(u, 0.0, 1.0, False)
    diff = u - mean
    if continuity and diff != 0:
        diff = min(diff + 0.5, 0.0)
    z = diff / math.sqrt(var)
    p = normal_two_sided_p(z)
    return MannWhitneyResult(u, z, p, bool(p < alpha))


def mann_whitney_pairwise(groups: Sequence[Sequence[float]], family_alpha: float = 0.05,
                          labels: Sequence[str] | None = None) -> PairwiseMatrix:
    """All-pairs Mann-Whitney with Bonferroni correction (ranks per pair)."""
    k = len(groups)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(k))
    alpha = bonferroni_alpha(family_alpha, k)
    stat = np.zeros((k, k))
    pvals = np.ones((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            res = mann_whitney(groups[i], groups[j], alpha)
            # positive when group i ranks higher
            z = _higher_sign(groups[i], groups[j]) * abs(res.z)
            stat[i, j], stat[j, i] = z, -z
            pvals[i, j] = pvals[j, i] = res.p_value
    significant = pvals < alpha
    np.fill_diagonal(significant, False)
    return PairwiseMatrix(labels, stat, pvals, significant, alpha, PairwiseMethod.MANN_WHITNEY)


def _higher_sign(a, b) -> float:
    ranks = midranks(np.concatenate([np.asarray(a, float), np.asarray(b, float)]))
    return 1.0 if ranks[:len(a)].mean() >= ranks[len(a):].mean() else -1.0


def critical_z(alpha: float) -> float:
    """Two-sided critical value of the standard normal."""
    return normal_quantile(1.0 - alpha / 2.0)
