"""Command-line entry point: ``i3kit validate | report | compare``."""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from pathlib import Path

from ._fmt import fmt_sig
from .config import ConfigError, GroupingConfig
from .corpus import CorpusError, load_corpus
from .report import GROUP_BY, ReportError, build_report, coverage_warning, journal_citations, write_bundle
from .stats import dunn_pairwise, kruskal_wallis, mann_whitney

EXIT_OK, EXIT_RUNTIME, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("I3KIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"I3KIT_THREADS must be an integer, got {env!r}") from None
    return 1


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    data = _read(args.input)
    fmt = args.format or ("jsonl" if args.input.endswith((".jsonl", ".ndjson")) else "csv")
    config = GroupingConfig.from_json(_read(args.config)) if args.config else GroupingConfig()
    corpus = load_corpus(data, fmt)
    return corpus, config, hashlib.sha256(data).hexdigest()


def cmd_validate(args, out) -> int:
    try:
        corpus, config, _ = _load(args)
    except (CorpusError, ConfigError) as exc:
        print(f"error: {exc}", file=out)
        print("1 error", file=out)
        return EXIT_INPUT
    rep = corpus.report
    print(f"records: {rep.n_records} (citable {rep.n_citable}, excluded {rep.n_excluded})", file=out)
    print("by doc_type: " + ", ".join(f"{k}={v}" for k, v in rep.by_doc_type.items()), file=out)
    print("by year: " + ", ".join(f"{k}={v}" for k, v in rep.by_year.items()), file=out)
    print(f"records without country tokens: {rep.n_without_countries}", file=out)
    warn = coverage_warning(corpus)
    if warn:
        print(f"warning: {warn}", file=out)
    print("0 errors", file=out)
    return EXIT_OK


def cmd_report(args, out) -> int:
    if not args.out:
        raise InputError("--out is required for report")
    corpus, config, digest = _load(args)
    bundle = build_report(
        corpus, config, args.group_by, threads=_threads(args), seed=args.seed,
        input_digest=digest, stamp=args.stamp, min_share_percent=args.min_share,
    )
    try:
        paths = write_bundle(bundle, args.out)
    except OSError as exc:
        print(f"error: cannot write to {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_RUNTIME
    for w in bundle.warnings:
        print(f"warning: {w}", file=out)
    print(f"wrote {len(paths)} files to {args.out}", file=out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    corpus, config, _ = _load(args)
    groups = journal_citations(corpus)
    units = [u.strip() for u in args.units.split(",") if u.strip()] if args.units else list(groups)
    unknown = [u for u in units if u not in groups]
    if unknown:
        raise InputError(f"unknown unit {unknown[0]!r}")
    if len(set(units)) < 2:
        raise InputError("need at least two distinct units to compare")
    units = list(dict.fromkeys(units))
    samples = [groups[u] for u in units]
    family_alpha = config.alpha_levels[0]
    kw = kruskal_wallis(samples)
    print(f"units: {len(units)}", file=out)
    print(f"kruskal-wallis: H={kw.statistic:.4f} df={kw.df} p={fmt_sig(kw.p_value)}", file=out)
    if len(units) == 2:
        res = mann_whitney(samples[0], samples[1], family_alpha)
        print("method: mann_whitney", file=out)
        print("comparisons: 1", file=out)
        print(f"per-comparison alpha: {family_alpha:.6f}", file=out)
        verdict = "significant" if res.significant else "not significant"
        print(f"{units[0]} vs {units[1]}: U={res.u:g} z={res.z:.4f} p={fmt_sig(res.p_value)} {verdict}", file=out)
        return EXIT_OK
    pw = dunn_pairwise(samples, family_alpha, units)
    k = len(units)
    print("method: dunn", file=out)
    print(f"comparisons: {k * (k - 1) // 2}", file=out)
    print(f"per-comparison alpha: {pw.per_comparison_alpha:.6f}", file=out)
    for i in range(k):
        for j in range(i + 1, k):
            verdict = "significant" if pw.significant[i, j] else "not significant"
            print(f"{units[i]} vs {units[j]}: z={pw.statistic[i, j]:.4f} p={fmt_sig(pw.p_values[i, j])} {verdict}",
                  file=out)
    if args.out:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        (target / "pairwise.csv").write_text(pw.to_csv(), encoding="utf-8")
        (target / "homogeneity_edges.csv").write_text(pw.edges_csv(), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="i3kit", description="Percentile-based integrated citation impact.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="CSV or JSONL records")
        p.add_argument("--format", choices=("csv", "jsonl"), help="input format (default: from extension)")
        p.add_argument("--config", help="GroupingConfig JSON")
        p.add_argument("--threads", type=int, help="worker threads (default: $I3KIT_THREADS or 1)")

    common(sub.add_parser("validate", help="parse and check the input"))
    rep = sub.add_parser("report", help="write journal/country tables, pairwise tests and graph files")
    common(rep)
    rep.add_argument("--group-by", choices=GROUP_BY, default="both")
    rep.add_argument("--out", required=True, help="output directory")
    rep.add_argument("--seed", type=int, default=0, help="layout seed")
    rep.add_argument("--min-share", type=float, help="minimum %%I3 for country rows (overrides config)")
    rep.add_argument("--stamp", action="store_true", help="record a timestamp in manifest.json")
    cmp_ = sub.add_parser("compare", help="Kruskal-Wallis then Dunn (or Mann-Whitney for two units)")
    common(cmp_)
    cmp_.add_argument("--units", help="comma-separated journal labels (default: all)")
    cmp_.add_argument("--out", help="optional directory for pairwise.csv")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handler = {"validate": cmd_validate, "report": cmd_report, "compare": cmd_compare}[args.command]
    try:
        return handler(args, out)
    except (InputError, CorpusError, ConfigError, ReportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
