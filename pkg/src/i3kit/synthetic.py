"""Seeded synthetic corpora for demos, benchmarks and tests."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

import numpy as np

from .corpus import PaperRecord

COUNTRIES = (
    "USA", "England", "Peoples R China", "Canada", "Germany", "Spain", "Netherlands", "Taiwan",
    "Australia", "South Korea", "Belgium", "Singapore", "France", "Finland", "Sweden", "Italy",
    "Switzerland", "Scotland", "Japan", "Brazil", "India", "Denmark", "Norway", "Israel",
    "Austria", "Wales", "North Ireland", "Portugal", "Greece", "Mexico",
)
_CITABLE = ("article", "review", "proceedings_paper", "letter")
_TYPE_WEIGHTS = (0.82, 0.08, 0.06, 0.04)


def _countries(rng: np.random.Generator, pool: tuple[str, ...], p_none: float) -> tuple[str, ...]:
    if rng.random() < p_none:
        return ()
    popularity = 1.0 / np.arange(1, len(pool) + 1)
    popularity /= popularity.sum()
    k = 1 + rng.poisson(0.8)
    return tuple(pool[i] for i in rng.choice(len(pool), size=k, p=popularity))


def random_corpus(n_papers: int, n_journals: int = 10, n_countries: int = 12, seed: int = 0,
                  years: tuple[int, ...] = (2007, 2008), p_no_address: float = 0.11) -> list[PaperRecord]:
    """Skewed journal sizes and negative-binomial citation counts."""
    if n_countries > len(COUNTRIES):
        raise ValueError(f"at most {len(COUNTRIES)} countries available")
    rng = np.random.default_rng(seed)
    pool = COUNTRIES[:n_countries]
    size_weights = rng.lognormal(0.0, 1.1, n_journals)
    size_weights /= size_weights.sum()
    journal_idx = rng.choice(n_journals, size=n_papers, p=size_weights)
    quality = rng.gamma(2.0, 2.0, n_journals)
    records = []
    for i in range(n_papers):
        j = int(journal_idx[i])
        mean = quality[j]
        cites = int(rng.negative_binomial(1.2, 1.2 / (1.2 + mean)))
        records.append(PaperRecord(
            id=f"p{i:06d}",
            journal=f"J{j:02d}",
            year=int(rng.choice(years)),
            doc_type=str(rng.choice(_CITABLE, p=_TYPE_WEIGHTS)),
            citations=cites,
            countries=_countries(rng, pool, p_no_address),
        ))
    return records


def inversion_corpus(seed: int = 7, n_small: int = 66, n_large: int = 375, n_background: int = 2000) -> list[PaperRecord]:
    """Small highly cited journal "A", large journal "B" with a long moderately cited tail.

    A background journal fills out the reference set. All items are articles
    from one year, so the three journals share a single reference set.
    """
    rng = np.random.default_rng(seed)
    records = []

    def add(journal: str, counts: Iterable[int]):
        for c in counts:
            records.append(PaperRecord(f"{journal}{len(records):05d}", journal, 2008, "article", int(c)))

    add("A", rng.negative_binomial(2.0, 2.0 / (2.0 + 13.0), n_small))
    add("B", rng.negative_binomial(1.0, 1.0 / (1.0 + 5.0), n_large))
    add("Other", rng.negative_binomial(0.8, 0.8 / (0.8 + 3.0), n_background))
    return records


def to_csv_bytes(records: Iterable[PaperRecord]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "journal", "year", "doc_type", "citations", "countries"])
    for r in records:
        w.writerow([r.id, r.journal, r.year, r.doc_type, r.citations, ";".join(r.countries)])
    return buf.getvalue().encode("utf-8")


def to_jsonl_bytes(records: Iterable[PaperRecord]) -> bytes:
    lines = [json.dumps({"id": r.id, "journal": r.journal, "year": r.year, "doc_type": r.doc_type,
                         "citations": r.citations, "countries": list(r.countries)}) for r in records]
    return ("\n".join(lines) + "\n").encode("utf-8")
