"""Paper-level records: parsing, validation, reference sets and country fractions."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Mapping

DOC_TYPES = ("article", "proceedings_paper", "review", "letter", "other")
CITABLE_TYPES = frozenset(DOC_TYPES[:4])
CSV_HEADER = ("id", "journal", "year", "doc_type", "citations", "countries")


class CorpusError(ValueError):
    """Raised for malformed input; carries the offending line and field when known."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class PaperRecord:
    id: str
    journal: str
    year: int
    doc_type: str
    citations: int
    countries: tuple[str, ...] = ()

    def __post_init__(self):
        if self.doc_type not in DOC_TYPES:
            raise ValueError(f"unknown doc_type {self.doc_type!r}")
        if self.citations < 0:
            raise ValueError("citations must be non-negative")

    @property
    def citable(self) -> bool:
        return self.doc_type in CITABLE_TYPES

    @property
    def refset_key(self) -> ReferenceSetKey:
        return ReferenceSetKey(self.doc_type, self.year)


@dataclass(frozen=True, order=True)
class ReferenceSetKey:
    doc_type: str
    year: int


@dataclass(frozen=True)
class ReferenceSet:
    """Sorted citation counts of all citable items sharing one key."""

    key: ReferenceSetKey
    citation_counts: tuple[int, ...]

    def __post_init__(self):
        if not self.citation_counts:
            raise ValueError("a reference set needs at least one item")
        counts = self.citation_counts
        if any(a > b for a, b in zip(counts, counts[1:])):
            object.__setattr__(self, "citation_counts", tuple(sorted(counts)))

    @property
    def size(self) -> int:
        return len(self.citation_counts)


@dataclass(frozen=True)
class ValidationReport:
    n_records: int
    n_citable: int
    n_excluded: int
    n_without_countries: int
    by_doc_type: dict[str, int] = field(default_factory=dict)
    by_year: dict[int, int] = field(default_factory=dict)

    @property
    def address_coverage(self) -> Fraction:
        """Share of citable records carrying at least one country token (0..1)."""
        if self.n_citable == 0:
            return Fraction(0)
        return Fraction(self.n_citable - self.n_without_countries, self.n_citable)


@dataclass(frozen=True)
class Corpus:
    records: tuple[PaperRecord, ...]
    report: ValidationReport

    @property
    def citable(self) -> tuple[PaperRecord, ...]:
        return tuple(r for r in self.records if r.citable)

    def by_id(self) -> dict[str, PaperRecord]:
        return {r.id: r for r in self.records}


def _parse_int(value, line: int, name: str) -> int:
    if isinstance(value, bool):
        raise CorpusError(f"expected an integer, got {value!r}", line, name)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            return int(text)
        except ValueError:
            pass
    raise CorpusError(f"expected an integer, got {value!r}", line, name)


def _normalize_doc_type(value, line: int) -> str:
    if not isinstance(value, str):
        raise CorpusError(f"expected a string, got {value!r}", line, "doc_type")
    token = value.strip().lower().replace(" ", "_").replace("-", "_")
    if token not in DOC_TYPES:
        raise CorpusError(f"unknown document type {value!r}", line, "doc_type")
    return token


def _make_record(raw: Mapping, line: int) -> PaperRecord:
    pid = raw["id"]
    if not isinstance(pid, str) or not pid.strip():
        raise CorpusError("empty id", line, "id")
    journal = raw["journal"]
    if not isinstance(journal, str) or not journal.strip():
        raise CorpusError("empty journal", line, "journal")
    year = _parse_int(raw["year"], line, "year")
    citations = _parse_int(raw["citations"], line, "citations")
    if citations < 0:
        raise CorpusError(f"negative citation count {citations}", line, "citations")
    countries = raw["countries"]
    if countries is None:
        tokens: tuple[str, ...] = ()
    elif isinstance(countries, str):
        tokens = tuple(t.strip() for t in countries.split(";") if t.strip())
    elif isinstance(countries, list) and all(isinstance(t, str) for t in countries):
        tokens = tuple(t.strip() for t in countries if t.strip())
    else:
        raise CorpusError("countries must be a ';'-separated string or list of strings", line, "countries")
    return PaperRecord(
        id=pid.strip(),
        journal=journal.strip(),
        year=year,
        doc_type=_normalize_doc_type(raw["doc_type"], line),
        citations=citations,
        countries=tokens,
    )


def _iter_csv(text: str):
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CorpusError("missing header row", 1) from None
    header = [h.strip().lstrip("﻿") for h in header]
    if tuple(header) != CSV_HEADER:
        raise CorpusError(f"header must be {','.join(CSV_HEADER)}", 1)
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(CSV_HEADER):
            raise CorpusError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", line)
        yield line, dict(zip(CSV_HEADER, row))


def _iter_jsonl(text: str):
    for line, chunk in enumerate(text.splitlines(), start=1):
        if not chunk.strip():
            continue
        try:
            obj = json.loads(chunk)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON ({exc.msg})", line) from None
        if not isinstance(obj, dict):
            raise CorpusError("expected a JSON object", line)
        missing = [k for k in CSV_HEADER if k not in obj]
        if missing:
            raise CorpusError("missing field", line, missing[0])
        extra = sorted(set(obj) - set(CSV_HEADER))
        if extra:
            raise CorpusError("unknown field", line, extra[0])
        yield line, obj


def load_corpus(source: bytes | IO[bytes], format: str = "csv") -> Corpus:
    """Parse a CSV or JSONL byte stream into a validated :class:`Corpus`.

    Raises :class:`CorpusError` on the first malformed row, duplicate id,
    negative citation count or unparseable year.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        text = bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"input is not valid UTF-8 (byte {exc.start})") from None
    if format == "csv":
        rows = _iter_csv(text)
    elif format == "jsonl":
        rows = _iter_jsonl(text)
    else:
        raise ValueError(f"unsupported format {format!r}")

    records: list[PaperRecord] = []
    seen: dict[str, int] = {}
    for line, raw in rows:
        rec = _make_record(raw, line)
        if rec.id in seen:
            raise CorpusError(f"duplicate id '{rec.id}' (first seen on line {seen[rec.id]})", line, "id")
        seen[rec.id] = line
        records.append(rec)
    return Corpus(tuple(records), build_report(records))


def build_report(records: Iterable[PaperRecord]) -> ValidationReport:
    records = list(records)
    citable = [r for r in records if r.citable]
    return ValidationReport(
        n_records=len(records),
        n_citable=len(citable),
        n_excluded=len(records) - len(citable),
        n_without_countries=sum(1 for r in citable if not r.countries),
        by_doc_type=dict(sorted(Counter(r.doc_type for r in records).items())),
        by_year=dict(sorted(Counter(r.year for r in records).items())),
    )


def make_corpus(records: Iterable[PaperRecord]) -> Corpus:
    """Build a corpus from in-memory records, enforcing id uniqueness."""
    records = tuple(records)
    counts = Counter(r.id for r in records)
    dupes = sorted(pid for pid, n in counts.items() if n > 1)
    if dupes:
        raise CorpusError(f"duplicate id '{dupes[0]}'", field="id")
    return Corpus(records, build_report(records))


def partition_reference_sets(corpus: Corpus) -> dict[ReferenceSetKey, ReferenceSet]:
    """Group citable records by (document type, publication year)."""
    buckets: dict[ReferenceSetKey, list[int]] = defaultdict(list)
    for rec in corpus.records:
        if rec.citable:
            buckets[rec.refset_key].append(rec.citations)
    return {key: ReferenceSet(key, tuple(sorted(vals))) for key, vals in sorted(buckets.items())}


def fractionate_countries(record: PaperRecord, dedupe: bool = False) -> dict[str, Fraction]:
    """Fractional credit per country, proportional to address occurrences.

    With ``dedupe`` each distinct country counts once.
    """
    tokens = list(dict.fromkeys(record.countries)) if dedupe else list(record.countries)
    if not tokens:
        return {}
    counts = Counter(tokens)
    total = len(tokens)
    return {country: Fraction(n, total) for country, n in counts.items()}


def resolve_aggregates(config, per_country: Mapping[str, object]) -> dict[str, object]:
    """Return ``per_country`` extended with one summed entry per configured aggregate.

    Member rows are kept; the caller tells aggregates apart via
    ``config.aggregates`` so totals over raw countries never double-count.
    """
    aggregates: Mapping[str, Iterable[str]] = config.aggregates
    clash = sorted(set(aggregates) & set(per_country))
    if clash:
        raise ValueError(f"aggregate name {clash[0]!r} collides with a country token")
    out = dict(per_country)
    for name, members in aggregates.items():
        total = 0
        for member in members:
            total = total + per_country.get(member, 0)
        out[name] = total
    return out
