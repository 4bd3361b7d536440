"""Integrated Impact Indicator (I3) toolkit.

Percentile ranks per paper, summed into additive impact scores that
decompose by journal or country, with nonparametric significance tests.
"""

__version__ = "0.1.0"

from .config import ConfigError, GroupingConfig
from .corpus import (
    Corpus,
    CorpusError,
    PaperRecord,
    ReferenceSet,
    ReferenceSetKey,
    fractionate_countries,
    load_corpus,
    make_corpus,
    partition_reference_sets,
    resolve_aggregates,
)
from .indicators import (
    GroupSummary,
    SetTotals,
    country_table,
    i3,
    i3_classed,
    journal_table,
    linear_regression,
    observed_vs_expected,
    share_of_total,
    summarize_group,
)
from .percentiles import (
    NSF_SIX_CLASSES,
    PercentileAssignment,
    RankClassScheme,
    TiePolicy,
    assign_all,
    percentile_of,
    rank_class_of,
)

__all__ = [
    "ConfigError", "Corpus", "CorpusError", "GroupSummary", "GroupingConfig", "NSF_SIX_CLASSES",
    "PaperRecord", "PercentileAssignment", "RankClassScheme", "ReferenceSet", "ReferenceSetKey",
    "SetTotals", "TiePolicy", "assign_all", "country_table", "fractionate_countries", "i3",
    "i3_classed", "journal_table", "linear_regression", "load_corpus", "make_corpus",
    "observed_vs_expected", "partition_reference_sets", "percentile_of", "rank_class_of",
    "resolve_aggregates", "share_of_total", "summarize_group",
]
