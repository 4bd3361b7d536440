"""Integrated impact sums, group summaries, shares and expectation ratios."""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import Corpus, fractionate_countries, resolve_aggregates
from .percentiles import PercentileAssignment, RankClassScheme, rank_class_of
from .stats.residuals import ZTestOutcome, z_residual

ACCOUNTED_LABEL = "% accounted"


def _weight(weights, paper_id):
    if weights is None:
        return 1
    w = weights[paper_id]
    if not 0 <= w <= 1:
        raise ValueError(f"weight {w} for {paper_id!r} outside [0, 1]")
    return w


def exact_dot(weights: Iterable, values: Iterable) -> Fraction:
    """Exact sum of w*v over ints/Fractions.

    Numerators are accumulated per denominator in plain integers, which
    is much faster than chaining Fraction additions.
    """
    acc: dict[int, int] = defaultdict(int)
    for w, v in zip(weights, values):
        acc[w.denominator * v.denominator] += w.numerator * v.numerator
    total = Fraction(0)
    for den in sorted(acc):
        total += Fraction(acc[den], den)
    return total


def i3(assignments: Iterable[PercentileAssignment], weights: Mapping[str, Fraction] | None = None) -> Fraction:
    """Sum of (optionally fraction-weighted) percentiles."""
    assignments = list(assignments)
    return exact_dot((_weight(weights, a.paper_id) for a in assignments), (a.percentile for a in assignments))


def i3_classed(assignments: Iterable[PercentileAssignment], scheme: RankClassScheme | None = None,
               weights: Mapping[str, Fraction] | None = None) -> Fraction:
    """Sum of (optionally fraction-weighted) rank-class weights.

    ``scheme`` re-bins the stored percentiles when given; otherwise the
    class weight recorded on each assignment is used.
    """
    assignments = list(assignments)
    classes = [rank_class_of(a.percentile, scheme) if scheme is not None else a.class_weight for a in assignments]
    return exact_dot((_weight(weights, a.paper_id) for a in assignments), classes)


def max_possible_i3(n_papers: int) -> int:
    """Ceiling of I3 when every paper sits at the 100th percentile."""
    return 100 * n_papers


def max_possible_i3_classed(n_papers: int, scheme: RankClassScheme) -> int:
    return scheme.max_weight * n_papers


def weighted_median(values: Sequence, weights: Sequence):
    """Lowest value at which the cumulative weight reaches half the total."""
    per_value: dict = defaultdict(list)
    for v, w in zip(values, weights):
        if w > 0:
            per_value[v].append(w)
    if not per_value:
        raise ValueError("median of an empty sample")
    mass = {v: exact_dot(ws, [1] * len(ws)) for v, ws in per_value.items()}
    half = sum(mass.values(), Fraction(0)) / 2
    cum = Fraction(0)
    for v in sorted(mass):
        cum += mass[v]
        if cum >= half:
            return v
    raise AssertionError("unreachable")


def _weighted_sem(values: Sequence, weights: Sequence, mean: Fraction) -> float:
    x = np.array([float(v) for v in values])
    w = np.array([float(v) for v in weights])
    total = w.sum()
    if total <= 1:
        return 0.0
    var = float(w @ (x - float(mean)) ** 2) / (total - 1)
    return math.sqrt(var / total)


@dataclass(frozen=True)
class SetTotals:
    n_papers: Fraction
    i3: Fraction
    i3_classed: Fraction
    total_citations: Fraction


@dataclass(frozen=True)
class GroupSummary:
    group: str
    n_papers: Fraction
    i3: Fraction
    i3_classed: Fraction
    mean_percentile: Fraction
    sem_percentile: float
    median_percentile: Fraction
    mean_class: Fraction
    sem_class: float
    median_class: Fraction
    total_citations: Fraction
    citations_per_paper: Fraction
    median_citations: Fraction
    aggregate: bool = False
    share_i3_percent: Fraction | None = None
    share_classed_percent: Fraction | None = None
    share_pubs_percent: Fraction | None = None
    ratio_i3: Fraction | None = None
    ratio_classed: Fraction | None = None
    test_i3: ZTestOutcome | None = None
    test_classed: ZTestOutcome | None = None


def summarize_group(
    label: str,
    assignments: Sequence[PercentileAssignment],
    citations: Mapping[str, int],
    weights: Mapping[str, Fraction] | None = None,
    aggregate: bool = False,
) -> GroupSummary:
    """Sums, means, s.e.m. and medians for one unit of analysis.

    ``weights`` carries fractional membership (country credit); every
    quantity, including the paper count, is weighted the same way.
    """
    ws = [_weight(weights, a.paper_id) for a in assignments]
    kept = [(a, w) for a, w in zip(assignments, ws) if w > 0]
    wts = [w for _, w in kept]
    pcts = [a.percentile for a, _ in kept]
    classes = [a.class_weight for a, _ in kept]
    cites = [citations[a.paper_id] for a, _ in kept]
    n = exact_dot(wts, [1] * len(wts))
    total_i3 = exact_dot(wts, pcts)
    total_classed = exact_dot(wts, classes)
    total_cites = exact_dot(wts, cites)
    if n == 0:
        zero = Fraction(0)
        return GroupSummary(label, zero, zero, zero, zero, 0.0, zero, zero, 0.0, zero, zero, zero, zero, aggregate)
    mean_pct = total_i3 / n
    mean_cls = total_classed / n
    return GroupSummary(
        group=label,
        n_papers=n,
        i3=total_i3,
        i3_classed=total_classed,
        mean_percentile=mean_pct,
        sem_percentile=_weighted_sem(pcts, wts, mean_pct),
        median_percentile=weighted_median(pcts, wts),
        mean_class=mean_cls,
        sem_class=_weighted_sem(classes, wts, mean_cls),
        median_class=Fraction(weighted_median(classes, wts)),
        total_citations=total_cites,
        citations_per_paper=total_cites / n,
        median_citations=Fraction(weighted_median(cites, wts)),
        aggregate=aggregate,
    )


def share_of_total(group_value, set_total) -> Fraction:
    """Percentage of ``set_total`` contributed by ``group_value``."""
    group_value, set_total = Fraction(group_value), Fraction(set_total)
    if set_total <= 0:
        raise ValueError("set total must be positive")
    if group_value < 0 or group_value > set_total:
        raise ValueError("group value must lie between 0 and the set total")
    return 100 * group_value / set_total


def observed_vs_expected(group: GroupSummary, totals: SetTotals, classed: bool = False) -> tuple[Fraction, Fraction]:
    """Expected impact given the group's publication share, and observed/expected."""
    if totals.n_papers <= 0 or (totals.i3_classed if classed else totals.i3) <= 0:
        raise ValueError("set totals must be positive")
    if group.n_papers == 0:
        raise ValueError(f"group {group.group!r} has no publications")
    observed, set_value = (group.i3_classed, totals.i3_classed) if classed else (group.i3, totals.i3)
    expected = set_value * group.n_papers / totals.n_papers
    return expected, observed / expected


def set_totals(assignments: Sequence[PercentileAssignment], citations: Mapping[str, int]) -> SetTotals:
    return SetTotals(
        n_papers=Fraction(len(assignments)),
        i3=i3(assignments),
        i3_classed=Fraction(sum(a.class_weight for a in assignments)),
        total_citations=Fraction(sum(citations[a.paper_id] for a in assignments)),
    )


def with_tests(summary: GroupSummary, totals: SetTotals, alphas=(0.05, 0.01)) -> GroupSummary:
    """Attach shares of the set total, observed/expected ratios and z marks."""
    exp_i3, ratio_i3 = observed_vs_expected(summary, totals)
    exp_cls, ratio_cls = observed_vs_expected(summary, totals, classed=True)
    return replace(
        summary,
        share_i3_percent=share_of_total(summary.i3, totals.i3),
        share_classed_percent=share_of_total(summary.i3_classed, totals.i3_classed),
        share_pubs_percent=share_of_total(summary.n_papers, totals.n_papers),
        ratio_i3=ratio_i3,
        ratio_classed=ratio_cls,
        test_i3=z_residual(summary.i3, exp_i3, alphas),
        test_classed=z_residual(summary.i3_classed, exp_cls, alphas),
    )


def canonical_order(rows: Iterable[GroupSummary]) -> list[GroupSummary]:
    """Descending I3, ties broken by label."""
    return sorted(rows, key=lambda s: (-s.i3, s.group))


def _run(jobs, threads: int):
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda job: job[0](*job[1:]), jobs))
    return [job[0](*job[1:]) for job in jobs]


def journal_table(corpus: Corpus, assignments: Sequence[PercentileAssignment], config,
                  threads: int = 1) -> list[GroupSummary]:
    records = corpus.by_id()
    citations = {a.paper_id: records[a.paper_id].citations for a in assignments}
    members: dict[str, list[PercentileAssignment]] = defaultdict(list)
    for a in assignments:
        members[records[a.paper_id].journal].append(a)
    totals = set_totals(assignments, citations)

    def build(label):
        return with_tests(summarize_group(label, members[label], citations), totals, config.alpha_levels)

    return canonical_order(_run([(build, label) for label in sorted(members)], threads))


def country_weights(corpus: Corpus, assignments: Sequence[PercentileAssignment], config) -> dict[str, dict[str, Fraction]]:
    """Per-country (and per-aggregate) fractional credit of each scored paper."""
    records = corpus.by_id()
    out: dict[str, dict[str, Fraction]] = defaultdict(dict)
    for a in assignments:
        fractions = fractionate_countries(records[a.paper_id], dedupe=config.dedupe_countries)
        if not fractions:
            continue
        for unit, share in resolve_aggregates(config, fractions).items():
            if share:
                out[unit][a.paper_id] = share
    return dict(out)


@dataclass(frozen=True)
class CountryTable:
    rows: list[GroupSummary]
    accounted: GroupSummary
    all_rows: list[GroupSummary]


def country_table(corpus: Corpus, assignments: Sequence[PercentileAssignment], config,
                  threads: int = 1, min_share_percent=None) -> CountryTable:
    """Country and aggregate rows filtered by I3 share, plus an "accounted" total.

    The accounted row covers every paper with at least one address (all raw
    countries together, aggregates excluded).
    """
    records = corpus.by_id()
    citations = {a.paper_id: records[a.paper_id].citations for a in assignments}
    totals = set_totals(assignments, citations)
    weights = country_weights(corpus, assignments, config)
    by_id = {a.paper_id: a for a in assignments}
    aggregates = set(config.aggregates)

    def build(label):
        subset = [by_id[pid] for pid in sorted(weights[label])]
        summary = summarize_group(label, subset, citations, weights[label], aggregate=label in aggregates)
        return with_tests(summary, totals, config.alpha_levels)

    rows = canonical_order(_run([(build, label) for label in sorted(weights)], threads))
    addressed = [a for a in assignments if fractionate_countries(records[a.paper_id])]
    accounted = with_tests(summarize_group(ACCOUNTED_LABEL, addressed, citations), totals, config.alpha_levels) \
        if addressed else summarize_group(ACCOUNTED_LABEL, [], citations)
    threshold = config.min_share_percent if min_share_percent is None else Fraction(str(min_share_percent))
    kept = [r for r in rows if r.share_i3_percent >= threshold]
    return CountryTable(kept, accounted, rows)


@dataclass(frozen=True)
class Regression:
    slope: float
    intercept: float
    r_squared: float


def linear_regression(x: Sequence[float], y: Sequence[float]) -> Regression:
    """Ordinary least squares fit of y on x."""
    x = np.asarray([float(v) for v in x])
    y = np.asarray([float(v) for v in y])
    if x.shape != y.shape:
        raise ValueError("x and y differ in length")
    if len(x) < 2:
        raise ValueError("need at least two points")
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0:
        raise ValueError("x is constant")
    dy = y - y.mean()
    slope = float(dx @ dy) / sxx
    intercept = float(y.mean()) - slope * float(x.mean())
    syy = float(dy @ dy)
    if syy == 0:
        return Regression(slope, intercept, 0.0)
    resid = dy - slope * dx
    r2 = 1.0 - float(resid @ resid) / syy
    return Regression(slope, intercept, min(max(r2, 0.0), 1.0))
