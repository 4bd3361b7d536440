"""End-to-end report bundle: tables, pairwise tests, homogeneity graph and layout."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from ._fmt import fmt_count, fmt_fixed, fmt_sig
from .config import GroupingConfig
from .corpus import Corpus
from .indicators import CountryTable, GroupSummary, country_table, journal_table
from .percentiles import PercentileAssignment, assign_all, assignments_to_csv
from .simgraph import (HomogeneityGraph, Layout, build_graph, core_numbers, export_dot,
                       export_pajek, kamada_kawai, layout_to_csv)
from .stats import KruskalWallisResult, PairwiseMatrix, dunn_pairwise, kruskal_wallis

LAYOUT_ITERATIONS = 300
GROUP_BY = ("journal", "country", "both")

COLUMNS = (
    "group", "n_papers", "i3", "share_i3_percent", "mark_i3", "i3_classed", "share_classed_percent",
    "mark_classed", "share_pubs_percent", "ratio_i3", "ratio_classed", "mean_percentile",
    "sem_percentile", "median_percentile", "mean_class", "sem_class", "median_class",
    "total_citations", "citations_per_paper", "median_citations", "z_i3", "z_classed", "aggregate",
)
_TEXT_COLUMNS = {"group", "mark_i3", "mark_classed", "aggregate"}


class ReportError(ValueError):
    pass


def _opt(value, places):
    return "" if value is None else fmt_fixed(value, places)


def _z(test) -> str:
    return "" if test is None or test.z is None else f"{test.z:.4f}"


def _mark(test) -> str:
    return "" if test is None else test.mark.value


def table_row(s: GroupSummary) -> list[str]:
    """Display strings for one summary, rounded to table precision."""
    return [
        s.group, fmt_count(s.n_papers), fmt_fixed(s.i3, 1), _opt(s.share_i3_percent, 2), _mark(s.test_i3),
        fmt_count(s.i3_classed), _opt(s.share_classed_percent, 2), _mark(s.test_classed),
        _opt(s.share_pubs_percent, 2), _opt(s.ratio_i3, 2), _opt(s.ratio_classed, 2),
        fmt_fixed(s.mean_percentile, 2), fmt_fixed(s.sem_percentile, 2), fmt_fixed(s.median_percentile, 2),
        fmt_fixed(s.mean_class, 2), fmt_fixed(s.sem_class, 2), fmt_count(s.median_class),
        fmt_count(s.total_citations), fmt_fixed(s.citations_per_paper, 2), fmt_count(s.median_citations),
        _z(s.test_i3), _z(s.test_classed), "yes" if s.aggregate else "",
    ]


def _json_value(column: str, text: str):
    if column in _TEXT_COLUMNS:
        return text
    if text == "":
        return None
    return float(text) if "." in text else int(text)


def table_csv(rows: Sequence[GroupSummary], footer: GroupSummary | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for s in rows:
        w.writerow(table_row(s))
    if footer is not None:
        w.writerow(table_row(footer))
    return buf.getvalue()


def table_json(rows: Sequence[GroupSummary], footer: GroupSummary | None = None) -> str:
    def obj(s):
        return {c: _json_value(c, v) for c, v in zip(COLUMNS, table_row(s))}

    doc = {"columns": list(COLUMNS), "rows": [obj(s) for s in rows]}
    if footer is not None:
        doc["accounted"] = obj(footer)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def table_markdown(rows: Sequence[GroupSummary], footer: GroupSummary | None = None, title: str = "") -> str:
    lines = [f"# {title}", ""] if title else []
    lines.append("| " + " | ".join(COLUMNS) + " |")
    lines.append("|" + "|".join("---" for _ in COLUMNS) + "|")
    body = list(rows) + ([footer] if footer is not None else [])
    for s in body:
        cells = [c.replace("|", "\\|") for c in table_row(s)]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


@dataclass
class ReportBundle:
    metadata: dict
    assignments: list[PercentileAssignment]
    journal_table: list[GroupSummary] | None = None
    country_table: CountryTable | None = None
    kruskal: KruskalWallisResult | None = None
    pairwise: PairwiseMatrix | None = None
    graph: HomogeneityGraph | None = None
    cores: dict[str, int] | None = None
    layout: Layout | None = None
    warnings: list[str] = field(default_factory=list)


def coverage_warning(corpus: Corpus) -> str | None:
    rep = corpus.report
    if rep.n_citable == 0 or rep.n_without_countries == 0:
        return None
    with_addr = rep.n_citable - rep.n_without_countries
    return (f"address coverage {fmt_fixed(rep.address_coverage * 100, 2)}% "
            f"({with_addr} of {rep.n_citable} citable records carry country tokens)")


def journal_citations(corpus: Corpus) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for rec in corpus.records:
        if rec.citable:
            out.setdefault(rec.journal, []).append(rec.citations)
    return dict(sorted(out.items()))


def build_report(corpus: Corpus, config: GroupingConfig, group_by: str = "both", *, threads: int = 1,
                 seed: int = 0, input_digest: str = "", stamp: bool = False,
                 min_share_percent=None) -> ReportBundle:
    if group_by not in GROUP_BY:
        raise ValueError(f"group_by must be one of {GROUP_BY}")
    if corpus.report.n_citable == 0:
        raise ReportError("no citable records in the input")
    assignments = assign_all(corpus, config, threads=threads)
    meta = {
        "tool": "i3kit",
        "version": __version__,
        "input_sha256": input_digest,
        "config_sha256": config.digest(),
        "group_by": group_by,
        "seed": seed,
        "min_share_percent": str(config.min_share_percent if min_share_percent is None else min_share_percent),
        "records": corpus.report.n_records,
        "citable_records": corpus.report.n_citable,
    }
    if stamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    bundle = ReportBundle(meta, assignments)
    if corpus.report.n_excluded:
        bundle.warnings.append(f"{corpus.report.n_excluded} non-citable records excluded")
    warn = coverage_warning(corpus)
    if warn:
        bundle.warnings.append(warn)

    if group_by in ("journal", "both"):
        bundle.journal_table = journal_table(corpus, assignments, config, threads=threads)
        groups = journal_citations(corpus)
        labels = list(groups)
        family_alpha = config.alpha_levels[0]
        if len(labels) >= 2:
            bundle.kruskal = kruskal_wallis([groups[k] for k in labels])
        bundle.pairwise = dunn_pairwise([groups[k] for k in labels], family_alpha, labels)
        bundle.graph = build_graph(bundle.pairwise)
        bundle.cores = core_numbers(bundle.graph)
        bundle.layout = kamada_kawai(bundle.graph, LAYOUT_ITERATIONS, seed)
    if group_by in ("country", "both"):
        try:
            bundle.country_table = country_table(corpus, assignments, config, threads=threads,
                                                 min_share_percent=min_share_percent)
        except ValueError as exc:
            raise ReportError(str(exc)) from None
        if not bundle.country_table.all_rows:
            bundle.warnings.append("no record carries country tokens; country table is empty")
    return bundle


def _pairwise_json(bundle: ReportBundle) -> str:
    pw = bundle.pairwise
    doc = {
        "labels": list(pw.labels),
        "method": pw.method.value,
        "comparisons": len(pw.labels) * (len(pw.labels) - 1) // 2,
        "per_comparison_alpha": float(fmt_sig(pw.per_comparison_alpha, 6)),
        "kruskal_wallis": None if bundle.kruskal is None else {
            "H": round(bundle.kruskal.statistic, 6), "df": bundle.kruskal.df,
            "p": float(fmt_sig(bundle.kruskal.p_value)),
        },
        "z": [[round(float(v), 6) + 0.0 for v in row] for row in pw.statistic],
        "p": [[float(fmt_sig(float(v))) for v in row] for row in pw.p_values],
        "significant": [[bool(v) for v in row] for row in pw.significant],
    }
    return json.dumps(doc, indent=2) + "\n"


def _cores_csv(bundle: ReportBundle) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "core_number", "degree"])
    degree = bundle.graph.degree()
    for label in bundle.graph.nodes:
        w.writerow([label, bundle.cores[label], degree[label]])
    return buf.getvalue()


def render_bundle(bundle: ReportBundle) -> dict[str, str]:
    """File name to UTF-8 text for every artifact of the bundle."""
    files = {"assignments.csv": assignments_to_csv(bundle.assignments)}
    if bundle.journal_table is not None:
        files["journals.csv"] = table_csv(bundle.journal_table)
        files["journals.json"] = table_json(bundle.journal_table)
        files["journals.md"] = table_markdown(bundle.journal_table, title="Journals by I3")
        files["pairwise.csv"] = bundle.pairwise.to_csv()
        files["pairwise.json"] = _pairwise_json(bundle)
        files["homogeneity_edges.csv"] = bundle.pairwise.edges_csv()
        files["homogeneity.net"] = export_pajek(bundle.graph)
        files["homogeneity.dot"] = export_dot(bundle.graph)
        files["cores.csv"] = _cores_csv(bundle)
        files["layout.csv"] = layout_to_csv(bundle.layout.positions, bundle.graph.nodes)
    if bundle.country_table is not None:
        ct = bundle.country_table
        files["countries.csv"] = table_csv(ct.rows, ct.accounted)
        files["countries.json"] = table_json(ct.rows, ct.accounted)
        files["countries.md"] = table_markdown(ct.rows, ct.accounted, title="Countries by I3")
    manifest = dict(bundle.metadata)
    manifest["warnings"] = list(bundle.warnings)
    manifest["files"] = {name: hashlib.sha256(text.encode()).hexdigest() for name, text in sorted(files.items())}
    files["manifest.json"] = json.dumps(manifest, indent=2, ensure_ascii=False) + "\n"
    return files


def write_bundle(bundle: ReportBundle, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in sorted(render_bundle(bundle).items()):
        path = out / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written
