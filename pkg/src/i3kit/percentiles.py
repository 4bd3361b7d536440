"""Percentile ranks and rank-class weights relative to a reference set."""

from __future__ import annotations

import bisect
import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .corpus import Corpus, ReferenceSet, ReferenceSetKey, partition_reference_sets
from ._fmt import fmt_fixed

DEFAULT_ADJUSTMENT = Fraction(9, 10)


class TiePolicy(str, Enum):
    HIGHEST = "highest"
    STRICT_LOWER = "strict_lower"


@dataclass(frozen=True)
class RankClassScheme:
    """Descending percentile thresholds with integer weights plus a catch-all class.

    A percentile falls in the first class whose threshold it reaches
    (inclusive); anything below every threshold gets ``catch_all``.
    """

    classes: tuple[tuple[Fraction, int], ...]
    catch_all: int = 1

    def __post_init__(self):
        classes = tuple((Fraction(t), int(w)) for t, w in self.classes)
        object.__setattr__(self, "classes", classes)
        if not classes:
            raise ValueError("scheme needs at least one thresholded class")
        thresholds = [t for t, _ in classes]
        weights = [w for _, w in classes] + [self.catch_all]
        if any(not (0 < t < 100) for t in thresholds):
            raise ValueError("thresholds must lie strictly between 0 and 100")
        if any(a <= b for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError("thresholds must be strictly descending")
        if any(a <= b for a, b in zip(weights, weights[1:])):
            raise ValueError("weights must be strictly descending")
        if self.catch_all < 1:
            raise ValueError("catch-all weight must be at least 1")

    @property
    def max_weight(self) -> int:
        return self.classes[0][1]


# top-1%, 5%, 10%, 25%, 50%, bottom-50%
NSF_SIX_CLASSES = RankClassScheme(((99, 6), (95, 5), (90, 4), (75, 3), (50, 2)), catch_all=1)


@dataclass(frozen=True)
class PercentileAssignment:
    paper_id: str
    percentile: Fraction
    class_weight: int
    refset: ReferenceSetKey


def percentile_of(
    citations: int,
    refset: ReferenceSet,
    policy: TiePolicy | str = TiePolicy.HIGHEST,
    adjustment: Fraction = DEFAULT_ADJUSTMENT,
) -> Fraction:
    """Exact percentile ``100 * (q + adjustment) / N`` of one member of ``refset``.

    Under ``highest`` q counts the other items cited no more often than this
    one, so tied items all share the top rank of their group; under
    ``strict_lower`` q counts only the items cited strictly less often.
    """
    counts = refset.citation_counts
    n = len(counts)
    if n == 0:
        raise ValueError("empty reference set")
    lo = bisect.bisect_left(counts, citations)
    if lo == n or counts[lo] != citations:
        raise ValueError(f"citation count {citations} is not a member of the reference set")
    if TiePolicy(policy) is TiePolicy.HIGHEST:
        q = bisect.bisect_right(counts, citations) - 1
    else:
        q = lo
    return 100 * (q + Fraction(adjustment)) / n


def rank_class_of(percentile: Fraction, scheme: RankClassScheme = NSF_SIX_CLASSES) -> int:
    for threshold, weight in scheme.classes:
        if percentile >= threshold:
            return weight
    return scheme.catch_all


def _assign_refset(records, refset, policy, adjustment, scheme):
    cache: dict[int, tuple[Fraction, int]] = {}
    out = []
    for rec in records:
        hit = cache.get(rec.citations)
        if hit is None:
            pct = percentile_of(rec.citations, refset, policy, adjustment)
            hit = cache[rec.citations] = (pct, rank_class_of(pct, scheme))
        out.append(PercentileAssignment(rec.id, hit[0], hit[1], refset.key))
    return out


def assign_all(corpus: Corpus, config, threads: int = 1) -> list[PercentileAssignment]:
    """Score every citable record against its own reference set, sorted by paper id."""
    refsets = partition_reference_sets(corpus)
    members: dict[ReferenceSetKey, list] = {key: [] for key in refsets}
    for rec in corpus.records:
        if rec.citable:
            members[rec.refset_key].append(rec)
    jobs = [(members[k], refsets[k], config.tie_policy, config.adjustment, config.scheme) for k in refsets]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda job: _assign_refset(*job), jobs))
    else:
        chunks = [_assign_refset(*job) for job in jobs]
    return sorted((a for chunk in chunks for a in chunk), key=lambda a: a.paper_id)


def assignments_to_csv(assignments: Iterable[PercentileAssignment]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["paper_id", "refset_doc_type", "refset_year", "percentile", "class_weight"])
    for a in assignments:
        writer.writerow([a.paper_id, a.refset.doc_type, a.refset.year, fmt_fixed(a.percentile, 1), a.class_weight])
    return buf.getvalue()


def max_percentile(n: int, adjustment: Fraction = DEFAULT_ADJUSTMENT) -> Fraction:
    """Upper bound of any percentile in a reference set of size ``n``."""
    return 100 * (n - 1 + Fraction(adjustment)) / n

