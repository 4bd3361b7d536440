"""Significance tests and the numeric kernels behind them."""

from .correlation import Correlation, partial_correlation, pearson, spearman
from .ranktests import (
    KruskalWallisResult,
    MannWhitneyResult,
    PairwiseMatrix,
    PairwiseMethod,
    bonferroni_alpha,
    critical_z,
    dunn_pairwise,
    kruskal_wallis,
    mann_whitney,
    mann_whitney_pairwise,
    midranks,
)
from .residuals import Mark, ZTestOutcome, z_residual
from .special import beta_inc, chi_square_sf, gamma_q, normal_cdf, normal_quantile, t_two_sided_p

__all__ = [
    "Correlation", "KruskalWallisResult", "MannWhitneyResult", "Mark", "PairwiseMatrix",
    "PairwiseMethod", "ZTestOutcome", "beta_inc", "bonferroni_alpha", "chi_square_sf",
    "critical_z", "dunn_pairwise", "gamma_q", "kruskal_wallis", "mann_whitney",
    "mann_whitney_pairwise", "midranks", "normal_cdf", "normal_quantile", "partial_correlation",
    "pearson", "spearman", "t_two_sided_p", "z_residual",
]
