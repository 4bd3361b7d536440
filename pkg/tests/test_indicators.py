import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from i3kit.config import GroupingConfig
from i3kit.corpus import PaperRecord, ReferenceSetKey, make_corpus
from i3kit.indicators import (
    SetTotals,
    country_table,
    exact_dot,
    i3,
    i3_classed,
    journal_table,
    linear_regression,
    max_possible_i3,
    max_possible_i3_classed,
    observed_vs_expected,
    share_of_total,
    summarize_group,
    weighted_median,
)
from i3kit.percentiles import NSF_SIX_CLASSES, PercentileAssignment, assign_all

KEY = ReferenceSetKey("article", 2007)


def assignments(percentiles, classes=None):
    classes = classes or [1] * len(percentiles)
    return [PercentileAssignment(f"p{i}", Fraction(p), w, KEY) for i, (p, w) in enumerate(zip(percentiles, classes))]


F1 = assignments([18, 58, 58, 78, 98], [1, 2, 2, 3, 5])


def test_i3_f1():
    assert i3(F1) == 310
    assert i3([]) == 0


def test_i3_equals_value_times_frequency():
    by_value = {}
    for a in F1:
        by_value[a.percentile] = by_value.get(a.percentile, 0) + 1
    assert i3(F1) == sum(x * f for x, f in by_value.items())


def test_i3_weighted_and_rejects_bad_weights():
    assert i3(F1, {f"p{i}": Fraction(1, 2) for i in range(5)}) == 155
    with pytest.raises(ValueError, match="outside"):
        i3(F1[:1], {"p0": Fraction(3, 2)})


def test_i3_classed():
    assert i3_classed(F1) == 13
    assert i3_classed(F1, NSF_SIX_CLASSES) == 13
    assert i3_classed(assignments([10, 20, 49])) == 3


def test_summary_f1():
    s = summarize_group("F1", F1, {f"p{i}": c for i, c in enumerate([0, 1, 1, 5, 10])})
    assert (s.n_papers, s.i3, s.mean_percentile, s.median_percentile) == (5, 310, 62, 58)
    assert s.i3 == s.n_papers * s.mean_percentile
    assert s.total_citations == 17 and s.citations_per_paper * s.n_papers == s.total_citations
    # sample sd of [18,58,58,78,98] is sqrt(880)
    assert s.sem_percentile == pytest.approx(math.sqrt(880) / math.sqrt(5), rel=1e-12)
    assert s.median_class == 2 and s.mean_class == Fraction(13, 5)


def test_summary_singleton():
    s = summarize_group("one", assignments([90]), {"p0": 4})
    assert s.mean_percentile == s.median_percentile == s.i3 == 90
    assert s.sem_percentile == 0


def test_summary_cites_per_paper():
    cites = {f"p{i}": c for i, c in enumerate([13] * 55 + [12] * 11)}
    s = summarize_group("MISQ", assignments([50] * 66), cites)
    assert s.total_citations == 847
    assert round(float(s.citations_per_paper), 2) == 12.83


def test_weighted_median_lower_convention():
    assert weighted_median([1, 2, 3, 4], [1, 1, 1, 1]) == 2
    assert weighted_median([5, 1], [Fraction(1, 3), Fraction(2, 3)]) == 1
    assert weighted_median([5, 1], [Fraction(2, 3), Fraction(1, 3)]) == 5


def test_exact_dot_matches_fraction_sum():
    ws = [Fraction(1, 3), Fraction(2, 7), 1, Fraction(5, 6)]
    vs = [Fraction(29, 10), 4, Fraction(58), Fraction(1, 9)]
    assert exact_dot(ws, vs) == sum(w * v for w, v in zip(ws, vs))


@pytest.mark.parametrize("value, total, expected", [
    ("5581.4", "213906.2", "2.61"),
    ("20811.3", "213906.2", "9.73"),
    (867, 10049, "8.63"),
    (235, 10049, "2.34"),
])
def test_shares_against_reported_table(value, total, expected):
    share = share_of_total(Fraction(value), Fraction(total))
    assert abs(float(share) - float(expected)) <= 0.005 + 1e-12


def test_share_whole_and_errors():
    assert share_of_total(7, 7) == 100
    with pytest.raises(ValueError):
        share_of_total(1, 0)
    with pytest.raises(ValueError):
        share_of_total(8, 7)


def _summary(n, i3_value, classed):
    base = summarize_group("g", assignments([50] * n), {f"p{i}": 0 for i in range(n)})
    from dataclasses import replace

    return replace(base, i3=Fraction(i3_value), i3_classed=Fraction(classed))


def test_ratio_reproduces_reported_ratios():
    # shares of publications and of impact taken from the reported country table
    totals = SetTotals(Fraction(10000), Fraction(10000), Fraction(10000), Fraction(0))
    nl = _summary(223, 375, 323)
    _, ratio = observed_vs_expected(nl, totals)
    assert round(float(ratio), 2) == 1.68
    ch = _summary(77, 124, 121)
    _, ratio_cls = observed_vs_expected(ch, totals, classed=True)
    assert round(float(ratio_cls), 2) == 1.57


def test_ratio_one_when_expectation_met():
    totals = SetTotals(Fraction(100), Fraction(5000), Fraction(200), Fraction(0))
    expected, ratio = observed_vs_expected(_summary(10, 500, 20), totals)
    assert expected == 500 and ratio == 1


def test_zero_publication_share_rejected():
    totals = SetTotals(Fraction(100), Fraction(5000), Fraction(200), Fraction(0))
    empty = summarize_group("none", [], {})
    with pytest.raises(ValueError):
        observed_vs_expected(empty, totals)


def test_maximum_impact_bounds():
    assert max_possible_i3(5737) == 573_700
    assert max_possible_i3_classed(5737, NSF_SIX_CLASSES) == 34_422


def test_regression_perfect_fit():
    fit = linear_regression([1, 2, 3, 4], [3, 5, 7, 9])
    assert fit.slope == pytest.approx(2) and fit.intercept == pytest.approx(1) and fit.r_squared == pytest.approx(1)


def test_regression_constant_y():
    fit = linear_regression([1, 2, 3], [4, 4, 4])
    assert fit.slope == 0 and fit.r_squared == 0


def test_regression_errors():
    with pytest.raises(ValueError):
        linear_regression([2, 2, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        linear_regression([1, 2], [1])


def test_regression_matches_normal_equations():
    x = [66, 375, 120, 48, 210, 95]
    y = [5581.4, 20811.3, 6100.2, 2950.0, 9800.5, 5200.7]
    n = len(x)
    fx, fy = [Fraction(v) for v in x], [Fraction(str(v)) for v in y]
    sx, sy = sum(fx), sum(fy)
    sxx, sxy = sum(v * v for v in fx), sum(a * b for a, b in zip(fx, fy))
    # solve [[n, sx], [sx, sxx]] @ [b0, b1] = [sy, sxy] by Cramer's rule
    det = n * sxx - sx * sx
    b0 = (sy * sxx - sx * sxy) / det
    b1 = (n * sxy - sx * sy) / det
    fit = linear_regression(x, y)
    assert fit.slope == pytest.approx(float(b1), abs=1e-12)
    assert fit.intercept == pytest.approx(float(b0), abs=1e-9)
    ybar = sy / n
    ss_res = sum((b - (b0 + b1 * a)) ** 2 for a, b in zip(fx, fy))
    ss_tot = sum((b - ybar) ** 2 for b in fy)
    assert fit.r_squared == pytest.approx(float(1 - ss_res / ss_tot), abs=1e-12)


def _records(rows):
    return [PaperRecord(f"p{i:04d}", j, y, "article", c, tuple(cs)) for i, (j, y, c, cs) in enumerate(rows)]


def test_country_decomposition_closure():
    rows = [("A", 2007, 3, ["USA", "USA", "Netherlands"]), ("A", 2007, 0, []),
            ("B", 2007, 9, ["Germany"]), ("B", 2008, 1, ["Netherlands", "Germany", "England"]),
            ("B", 2008, 4, ["England"]), ("A", 2008, 2, [])]
    corpus = make_corpus(_records(rows))
    config = GroupingConfig.eu_uk_preset(min_share_percent=0)
    scored = assign_all(corpus, config)
    table = country_table(corpus, scored, config)
    raw = [r for r in table.all_rows if not r.aggregate]
    addressless = [a for a in scored if not corpus.by_id()[a.paper_id].countries]
    assert sum(r.i3 for r in raw) + i3(addressless) == i3(scored)
    assert sum(r.n_papers for r in raw) == 4
    assert table.accounted.n_papers == 4
    eu = next(r for r in table.all_rows if r.group == "EU-27")
    members = [r for r in raw if r.group in ("Netherlands", "Germany")]
    assert eu.i3 == sum(r.i3 for r in members) and eu.aggregate
    uk = next(r for r in table.all_rows if r.group == "UK")
    assert uk.n_papers == Fraction(1, 3) + 1


def test_journal_shares_close_and_order():
    rows = [("A", 2007, c, []) for c in (10, 12, 15)] + [("B", 2007, c, []) for c in range(12)]
    corpus = make_corpus(_records(rows))
    table = journal_table(corpus, assign_all(corpus, GroupingConfig()), GroupingConfig())
    assert [r.group for r in table] == ["B", "A"]
    assert sum(r.share_i3_percent for r in table) == 100
    assert sum(r.share_pubs_percent for r in table) == 100
    assert table[1].mean_percentile > table[0].mean_percentile


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("ABC"), st.integers(0, 30)), min_size=2, max_size=40), st.data())
def test_additivity_and_removal(rows, data):
    corpus = make_corpus(_records([(j, 2007, c, []) for j, c in rows]))
    scored = assign_all(corpus, GroupingConfig())
    mask = data.draw(st.lists(st.booleans(), min_size=len(scored), max_size=len(scored)))
    part_a = [a for a, m in zip(scored, mask) if m]
    part_b = [a for a, m in zip(scored, mask) if not m]
    assert i3(part_a) + i3(part_b) == i3(scored)
    assert i3_classed(part_a) + i3_classed(part_b) == i3_classed(scored)
    assert i3(scored) <= 100 * len(scored)
    assert i3_classed(scored) <= NSF_SIX_CLASSES.max_weight * len(scored)
    assert all(a.percentile > 0 for a in scored)
    assert i3(scored[1:]) < i3(scored)
