from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from i3kit.config import EU27, UK, ConfigError, GroupingConfig
from i3kit.corpus import (
    CorpusError,
    PaperRecord,
    ReferenceSetKey,
    fractionate_countries,
    load_corpus,
    make_corpus,
    partition_reference_sets,
    resolve_aggregates,
)

HEADER = b"id,journal,year,doc_type,citations,countries\n"


def test_csv_row_maps_fields():
    corpus = load_corpus(HEADER + b'p1,JASIST,2007,article,12,"USA;USA;NLD"\n')
    (rec,) = corpus.records
    assert rec == PaperRecord("p1", "JASIST", 2007, "article", 12, ("USA", "USA", "NLD"))


def test_crlf_and_quoted_commas():
    data = b'id,journal,year,doc_type,citations,countries\r\np1,"Info, Sci",2008,review,0,\r\n'
    (rec,) = load_corpus(data).records
    assert rec.journal == "Info, Sci"
    assert rec.countries == ()


def test_empty_countries_counted_as_no_address():
    corpus = load_corpus(HEADER + b"p1,J,2007,article,3,\np2,J,2007,article,4,USA\n")
    assert corpus.records[0].countries == ()
    assert corpus.report.n_without_countries == 1
    assert corpus.report.address_coverage == Fraction(1, 2)


def test_duplicate_id_names_the_id():
    with pytest.raises(CorpusError, match="p1") as exc:
        load_corpus(HEADER + b"p1,J,2007,article,1,\np1,K,2008,article,2,\n")
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "row, field",
    [
        (b"p1,J,2007,article,-1,\n", "citations"),
        (b"p1,J,20x7,article,1,\n", "year"),
        (b"p1,J,2007,editorial,1,\n", "doc_type"),
        (b"p1,J,2007,article,one,\n", "citations"),
    ],
)
def test_bad_fields_report_line_and_field(row, field):
    with pytest.raises(CorpusError) as exc:
        load_corpus(HEADER + row)
    assert exc.value.line == 2
    assert exc.value.field == field


def test_wrong_field_count():
    with pytest.raises(CorpusError, match="expected 6 fields"):
        load_corpus(HEADER + b"p1,J,2007\n")


def test_header_required():
    with pytest.raises(CorpusError, match="header"):
        load_corpus(b"p1,J,2007,article,1,\n")


def test_jsonl_matches_csv():
    csv_corpus = load_corpus(HEADER + b'p1,J,2007,article,5,"A;B"\n')
    jsonl = b'{"id": "p1", "journal": "J", "year": 2007, "doc_type": "article", "citations": 5, "countries": ["A", "B"]}\n'
    assert load_corpus(jsonl, "jsonl") == csv_corpus


def test_jsonl_rejects_unknown_field():
    line = b'{"id": "p1", "journal": "J", "year": 2007, "doc_type": "article", "citations": 5, "countries": [], "x": 1}\n'
    with pytest.raises(CorpusError, match="unknown field"):
        load_corpus(line, "jsonl")


def test_other_doc_type_parsed_but_not_citable():
    corpus = load_corpus(HEADER + b"p1,J,2007,other,5,\np2,J,2007,letter,1,\n")
    assert corpus.report.n_excluded == 1
    assert [r.id for r in corpus.citable] == ["p2"]
    assert list(partition_reference_sets(corpus)) == [ReferenceSetKey("letter", 2007)]


def test_reload_is_deterministic():
    data = HEADER + b'p1,J,2007,article,12,"USA;NLD"\np2,K,2008,review,0,\n'
    assert load_corpus(data) == load_corpus(data)


def _rec(i, doc_type, year, cites=0, countries=()):
    return PaperRecord(f"p{i}", "J", year, doc_type, cites, tuple(countries))


def test_partition_sizes():
    recs = [_rec(i, "article", 2007) for i in range(3)] + [_rec(3, "review", 2007)] + \
        [_rec(4 + i, "article", 2008) for i in range(2)]
    sets = partition_reference_sets(make_corpus(recs))
    assert {k: v.size for k, v in sets.items()} == {
        ReferenceSetKey("article", 2007): 3,
        ReferenceSetKey("review", 2007): 1,
        ReferenceSetKey("article", 2008): 2,
    }


def test_partition_singleton_and_empty():
    assert [s.size for s in partition_reference_sets(make_corpus([_rec(0, "letter", 2010)])).values()] == [1]
    assert partition_reference_sets(make_corpus([])) == {}


def test_partition_matches_hand_tally():
    keys = [("article", 2007), ("review", 2007), ("article", 2008), ("letter", 2008)]
    layout = [0, 1, 2, 3, 0, 0, 2, 1, 3, 3, 0, 2]
    recs = [_rec(i, *keys[k], cites=i % 4) for i, k in enumerate(layout)]
    tally = {}
    for k in layout:
        tally[keys[k]] = tally.get(keys[k], 0) + 1
    sets = partition_reference_sets(make_corpus(recs))
    assert {(k.doc_type, k.year): v.size for k, v in sets.items()} == tally
    assert sets[ReferenceSetKey("article", 2007)].citation_counts == (0, 0, 1, 2)


citable_records = st.lists(
    st.tuples(st.sampled_from(["article", "review", "letter", "proceedings_paper", "other"]),
              st.integers(2005, 2009), st.integers(0, 50)),
    max_size=60,
)


@given(citable_records)
def test_partition_totality(rows):
    corpus = make_corpus(_rec(i, d, y, c) for i, (d, y, c) in enumerate(rows))
    sets = partition_reference_sets(corpus)
    assert sum(s.size for s in sets.values()) == sum(1 for d, _, _ in rows if d != "other")
    for key, s in sets.items():
        assert list(s.citation_counts) == sorted(c for d, y, c in rows if (d, y) == (key.doc_type, key.year))


def test_fractions_examples():
    assert fractionate_countries(_rec(0, "article", 2007, countries=["A", "A", "B"])) == {
        "A": Fraction(2, 3), "B": Fraction(1, 3)}
    assert fractionate_countries(_rec(0, "article", 2007)) == {}
    assert fractionate_countries(_rec(0, "article", 2007, countries=["A"])) == {"A": Fraction(1)}


def test_fractions_dedupe_flag():
    rec = _rec(0, "article", 2007, countries=["A", "A", "B"])
    assert fractionate_countries(rec, dedupe=True) == {"A": Fraction(1, 2), "B": Fraction(1, 2)}


@given(st.lists(st.sampled_from("ABCDE"), max_size=9))
def test_fraction_conservation(tokens):
    fr = fractionate_countries(_rec(0, "article", 2007, countries=tokens))
    assert sum(fr.values()) == (1 if tokens else 0)
    for country, share in fr.items():
        assert share == Fraction(Counter(tokens)[country], len(tokens))


def test_uk_aggregate():
    config = GroupingConfig(aggregates={"UK": UK})
    out = resolve_aggregates(config, {"England": 3, "Scotland": 1})
    assert out["UK"] == 4
    assert out["England"] == 3


def test_empty_aggregate_is_zero():
    assert resolve_aggregates(GroupingConfig(aggregates={"EU-27": EU27}), {"USA": 5})["EU-27"] == 0


def test_eu_over_five_countries():
    values = {"Netherlands": Fraction(5, 3), "Germany": Fraction(2), "Spain": Fraction(1, 6),
              "USA": Fraction(9), "Switzerland": Fraction(4)}
    out = resolve_aggregates(GroupingConfig(aggregates={"EU-27": EU27}), values)
    assert out["EU-27"] == Fraction(5, 3) + 2 + Fraction(1, 6)


def test_aggregate_name_collision():
    with pytest.raises(ValueError, match="collides"):
        resolve_aggregates(GroupingConfig(aggregates={"UK": UK}), {"UK": 1})


fractions_ = st.fractions(min_value=0, max_value=10, max_denominator=12)


@given(st.dictionaries(st.sampled_from(["England", "Wales", "USA", "Spain"]), fractions_),
       st.dictionaries(st.sampled_from(["England", "Wales", "USA", "Spain"]), fractions_),
       fractions_, fractions_)
def test_aggregate_linearity(u, v, a, b):
    config = GroupingConfig(aggregates={"UK": UK, "EU-27": EU27})
    keys = set(u) | set(v)
    combo = {k: a * u.get(k, 0) + b * v.get(k, 0) for k in keys}
    left = resolve_aggregates(config, combo)
    ru, rv = resolve_aggregates(config, u), resolve_aggregates(config, v)
    for name in config.aggregates:
        assert left[name] == a * ru[name] + b * rv[name]


def test_config_round_trip_and_rejects_unknown_keys():
    config = GroupingConfig.from_json(b'{"adjustment": 0.9, "tie_policy": "strict_lower", "aggregates": {"UK": ["England"]}}')
    assert config.adjustment == Fraction(9, 10)
    assert GroupingConfig.from_dict(config.to_dict()) == config
    with pytest.raises(ConfigError, match="unknown config key"):
        GroupingConfig.from_json(b'{"adjustmnet": 0.9}')


@pytest.mark.parametrize("doc", [
    {"adjustment": 1},
    {"alpha_levels": [0.01, 0.05]},
    {"aggregates": {"EU": []}},
    {"scheme": {"classes": [[50, 2], [90, 4]], "catch_all": 1}},
    {"tie_policy": "average"},
])
def test_config_validation(doc):
    with pytest.raises(ConfigError):
        GroupingConfig.from_dict(doc)
