"""Command-line surface: score runs, build ideals, normalize, sweep, compare.

Every subcommand is a thin shell over the library modules; the CLI only
loads files, assembles tables and writes bytes. Exit codes: 0 success,
1 data or domain error, 2 usage error. Diagnostics go to stderr, data to
--out or stdout.
"""

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import classic, fileio
from .ideal import ideal_ranking
from .model import DataError, EvalConfig, MdcuError, RankedList, RelevanceCorpus
from .normalize import gain_vector, normalized_triple, theme_slice_gain
from .scoring import score_ranking


def _add_common(p: argparse.ArgumentParser, run_mode: str) -> None:
    p.add_argument(
        "--manifest", action="append", required=True, metavar="PATH",
        help="topic manifest JSON (repeat for several topics)",
    )
    p.add_argument(
        "--corpus", action="append", required=True, metavar="PATH",
        help="relevance corpus CSV, paired with --manifest in order",
    )
    if run_mode == "one":
        p.add_argument("--run", required=True, metavar="PATH", help="run file to evaluate")
    elif run_mode == "many":
        p.add_argument(
            "--run", action="append", required=True, metavar="PATH",
            help="run file (repeat to compare several)",
        )
    p.add_argument(
        "--b", type=float, default=None,
        help="overlap log base > 1 (default: the manifest's value, usually 2)",
    )
    p.add_argument(
        "--per-theme-b", default=None, metavar="B1,B2,...",
        help="comma-separated per-theme overlap bases overriding --b",
    )
    p.add_argument("--no-overlap", action="store_true", help="disable overlap discounting")
    p.add_argument(
        "--no-attributes", action="store_true",
        help="disable usability attribute downgrading",
    )
    p.add_argument(
        "--rank-discount", nargs="?", const=2.0, default=None, type=float, metavar="BASE",
        help="enable rank-based discount with log base BASE (default 2)",
    )
    p.add_argument(
        "--k", type=int, default=None,
        help="evaluate only the top k ranks of each run (default: full run)",
    )
    p.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")


def _add_themes(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--themes", default=None, metavar="T1,T2,...",
        help="restrict to a theme subset: names or 1-based positions, comma separated",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdcu",
        description="Score ranked retrieval results under multidimensional "
        "graded relevance with overlap and usability discounting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score a run rank by rank")
    _add_common(p, "one")

    p = sub.add_parser("ideal", help="build the greedy ideal ranking of a corpus")
    _add_common(p, "none")

    p = sub.add_parser("normalize", help="normalize a run against the corpus ideal")
    _add_common(p, "one")
    _add_themes(p)

    p = sub.add_parser("sweep", help="score a run across several overlap bases")
    _add_common(p, "one")
    _add_themes(p)
    p.add_argument(
        "--b-values", required=True, metavar="B1,B2,...",
        help="comma-separated overlap bases to sweep",
    )

    p = sub.add_parser("compare", help="normalized curves for several runs side by side")
    _add_common(p, "many")
    _add_themes(p)

    p = sub.add_parser("classic", help="mono-dimensional baselines: CG, DCG, nDCG, P@k, AP")
    _add_common(p, "one")
    _add_themes(p)
    p.add_argument(
        "--threshold", action="append", type=float, default=None, metavar="T",
        help="binarization threshold on average relevance (repeatable; default 1 and 2)",
    )
    p.add_argument("--dcg-base", type=float, default=2.0, help="log base of the DCG discount")

    return parser


def _parse_float_list(raw: str, flag: str, parser: argparse.ArgumentParser) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError:
        parser.error(f"{flag} expects comma-separated numbers, got {raw!r}")
    if not values:
        parser.error(f"{flag} must list at least one value")
    return values


def _validate(args, parser: argparse.ArgumentParser) -> None:
    if len(args.manifest) != len(args.corpus):
        parser.error(
            f"{len(args.manifest)} --manifest flags but {len(args.corpus)} --corpus flags"
        )
    if args.b is not None and not args.b > 1:
        parser.error(f"--b must be > 1, got {args.b}")
    if args.rank_discount is not None and not args.rank_discount > 1:
        parser.error(f"--rank-discount base must be > 1, got {args.rank_discount}")
    if args.k is not None and args.k < 1:
        parser.error(f"--k must be >= 1, got {args.k}")
    args.per_theme_b_values = None
    if args.per_theme_b is not None:
        args.per_theme_b_values = _parse_float_list(args.per_theme_b, "--per-theme-b", parser)
        for b in args.per_theme_b_values:
            if not b > 1:
                parser.error(f"--per-theme-b entries must be > 1, got {b}")
    if getattr(args, "b_values", None) is not None:
        args.b_values_parsed = _parse_float_list(args.b_values, "--b-values", parser)
        for b in args.b_values_parsed:
            if not b > 1:
                parser.error(f"--b-values entries must be > 1, got {b}")
        if args.per_theme_b is not None:
            parser.error("--per-theme-b cannot be combined with a base sweep")


def _config_for(args, corpus: RelevanceCorpus, b: float | None = None) -> EvalConfig:
    manifest = corpus.manifest
    if b is None:
        b = args.b if args.b is not None else manifest.overlap_base_default
    per_theme = args.per_theme_b_values
    if per_theme is None:
        per_theme = manifest.per_theme_b
    return EvalConfig(
        b=b,
        per_theme_b=per_theme,
        overlap_on=not args.no_overlap,
        attributes_on=not args.no_attributes,
        rank_discount_on=args.rank_discount is not None,
        rank_discount_base=args.rank_discount if args.rank_discount is not None else 2.0,
    )


def _load_corpora(args) -> dict[str, RelevanceCorpus]:
    corpora: dict[str, RelevanceCorpus] = {}
    for mpath, cpath in zip(args.manifest, args.corpus):
        corpus = fileio.read_corpus(mpath, cpath)
        topic_id = corpus.manifest.topic_id
        if topic_id in corpora:
            raise DataError(f"topic {topic_id!r} appears in more than one manifest")
        corpora[topic_id] = corpus
    return corpora


def _load_rankings(run_path, corpora: dict[str, RelevanceCorpus], k: int | None) -> list[RankedList]:
    rankings = []
    for ranking in fileio.read_run(run_path):
        if ranking.topic_id not in corpora:
            raise DataError(
                f"{run_path}: topic {ranking.topic_id!r} has no matching --manifest/--corpus"
            )
        if k is not None and k < len(ranking.entries):
            ranking = RankedList(
                topic_id=ranking.topic_id,
                entries=ranking.entries[:k],
                run_tag=ranking.run_tag,
            )
        rankings.append(ranking)
    return rankings


def _theme_subset(args, corpus: RelevanceCorpus) -> tuple[int, ...] | None:
    raw = getattr(args, "themes", None)
    if raw is None:
        return None
    names = corpus.manifest.theme_names
    subset = []
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok in names:
            subset.append(names.index(tok) + 1)
            continue
        try:
            index = int(tok)
        except ValueError:
            raise DataError(
                f"unknown theme {tok!r}; topic {corpus.manifest.topic_id} has {list(names)}"
            ) from None
        if not 1 <= index <= len(names):
            raise DataError(f"theme position {index} outside 1..{len(names)}")
        subset.append(index)
    if not subset:
        raise DataError("--themes must select at least one theme")
    return tuple(sorted(set(subset)))


def _check_same_themes(reports) -> None:
    first = reports[0].theme_names
    for report in reports[1:]:
        if report.theme_names != first:
            raise DataError(
                "topics declare different themes; a shared CSV table is not "
                "possible (use one invocation per topic)"
            )


def cmd_score(args) -> bytes:
    corpora = _load_corpora(args)
    rankings = _load_rankings(args.run, corpora, args.k)
    reports = [
        score_ranking(r, corpora[r.topic_id], _config_for(args, corpora[r.topic_id]))
        for r in rankings
    ]
    if args.format == "json":
        payload = {"kind": "score_reports", "reports": [fileio.report_json(r) for r in reports]}
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    if not reports:
        return b""
    _check_same_themes(reports)
    rows = [row for report in reports for row in fileio.score_rows(report)]
    return fileio.write_table(fileio.score_header(reports[0]), rows)


def cmd_ideal(args) -> bytes:
    corpora = _load_corpora(args)
    ideals = [
        ideal_ranking(corpus, _config_for(args, corpus)) for corpus in corpora.values()
    ]
    if args.format == "json":
        payloads = []
        for idl in ideals:
            payload = fileio.report_json(idl.report)
            payload["kind"] = "ideal_ranking"
            payload["ordering"] = list(idl.ordering)
            payloads.append(payload)
        return (json.dumps({"kind": "ideal_rankings", "rankings": payloads}, indent=2) + "\n").encode("utf-8")
    reports = [idl.report for idl in ideals]
    _check_same_themes(reports)
    rows = [row for report in reports for row in fileio.score_rows(report)]
    return fileio.write_table(fileio.score_header(reports[0]), rows)


def _mean(values: list[float]) -> float:
    return sum(values) / len(values)


def cmd_normalize(args) -> bytes:
    corpora = _load_corpora(args)
    rankings = _load_rankings(args.run, corpora, args.k)
    header = ["topic", "rank", "doc_id", "gain", "ideal_doc_id", "ideal_gain", "normalized"]
    rows: list[list] = []
    triples = []
    configs = {}
    for ranking in rankings:
        corpus = corpora[ranking.topic_id]
        config = _config_for(args, corpus)
        configs[ranking.topic_id] = config
        subset = _theme_subset(args, corpus)
        report = score_ranking(ranking, corpus, config)
        idl = ideal_ranking(corpus, config)
        sg, ig, ng = normalized_triple(report, idl.report, theme_subset=subset)
        triples.append((ranking.topic_id, sg, ig, ng))
        for i in range(len(sg)):
            rows.append(
                [
                    ranking.topic_id,
                    i + 1,
                    ranking.entries[i],
                    sg[i],
                    idl.ordering[i] if i < len(idl.ordering) else None,
                    ig[i],
                    ng[i],
                ]
            )
    if len(triples) > 1:
        max_k = max(len(sg) for _, sg, _, _ in triples)
        for i in range(max_k):
            at_rank = [(sg, ig, ng) for _, sg, ig, ng in triples if i < len(sg)]
            rows.append(
                [
                    "mean",
                    i + 1,
                    None,
                    _mean([sg[i] for sg, _, _ in at_rank]),
                    None,
                    _mean([ig[i] for _, ig, _ in at_rank]),
                    _mean([ng[i] for _, _, ng in at_rank]),
                ]
            )
    meta = {
        "kind": "normalize",
        "configs": {topic: asdict(config) for topic, config in configs.items()},
    }
    return fileio.write_table(header, rows, args.format, meta)


def cmd_sweep(args) -> bytes:
    corpora = _load_corpora(args)
    rankings = _load_rankings(args.run, corpora, args.k)
    header = ["topic", "b", "rank", "series", "value"]
    rows: list[list] = []
    for b in args.b_values_parsed:
        for ranking in rankings:
            corpus = corpora[ranking.topic_id]
            config = _config_for(args, corpus, b=b)
            subset = _theme_subset(args, corpus)
            themes = subset if subset is not None else range(1, corpus.manifest.n + 1)
            report = score_ranking(ranking, corpus, config)
            if not report.rows:
                continue
            for t in themes:
                series = corpus.manifest.theme_names[t - 1]
                for i, value in enumerate(theme_slice_gain(report, (t,))):
                    rows.append([ranking.topic_id, b, i + 1, series, value])
            for i, value in enumerate(gain_vector(report, len(report.rows))):
                rows.append([ranking.topic_id, b, i + 1, "total", value])
    meta = {"kind": "sweep", "b_values": list(args.b_values_parsed)}
    return fileio.write_table(header, rows, args.format, meta)


def cmd_compare(args) -> bytes:
    corpora = _load_corpora(args)
    labels = []
    for path in args.run:
        label = Path(path).stem
        while label in labels:
            label += "+"
        labels.append(label)
    ideals = {}
    header = ["series", "x", "y"]
    rows: list[list] = []
    for label, run_path in zip(labels, args.run):
        rankings = _load_rankings(run_path, corpora, args.k)
        per_topic_ncg = []
        for ranking in rankings:
            corpus = corpora[ranking.topic_id]
            config = _config_for(args, corpus)
            subset = _theme_subset(args, corpus)
            key = ranking.topic_id
            if key not in ideals:
                ideals[key] = ideal_ranking(corpus, config)
            report = score_ranking(ranking, corpus, config)
            sg, _ig, ng = normalized_triple(report, ideals[key].report, theme_subset=subset)
            per_topic_ncg.append(ng)
            for i in range(len(sg)):
                rows.append([f"{label}:{ranking.topic_id}:gain", i + 1, sg[i]])
            for i in range(len(ng)):
                rows.append([f"{label}:{ranking.topic_id}:ncg", i + 1, ng[i]])
        if len(per_topic_ncg) > 1:
            max_k = max(len(ng) for ng in per_topic_ncg)
            for i in range(max_k):
                at_rank = [ng[i] for ng in per_topic_ncg if i < len(ng)]
                rows.append([f"{label}:mean:ncg", i + 1, _mean(at_rank)])
    meta = {"kind": "compare", "runs": {label: path for label, path in zip(labels, args.run)}}
    return fileio.write_table(header, rows, args.format, meta)


def cmd_classic(args) -> bytes:
    corpora = _load_corpora(args)
    rankings = _load_rankings(args.run, corpora, args.k)
    thresholds = tuple(args.threshold) if args.threshold else classic.DEFAULT_THRESHOLDS
    labels = [f"{t:g}" for t in thresholds]
    header = [
        "topic",
        "rank",
        "doc_id",
        "total_rel",
        "avg_rel",
        *(f"rel_ge_{label}" for label in labels),
        *(f"p_at_ge_{label}" for label in labels),
        "total_cg",
        "avg_cg",
        "dcg",
        "ndcg",
    ]
    rows: list[list] = []
    for ranking in rankings:
        corpus = corpora[ranking.topic_id]
        subset = _theme_subset(args, corpus)
        mono = classic.collapse_mono(ranking, corpus, thresholds, subset)
        dcg_values = classic.dcg(mono, args.dcg_base)
        ndcg_values = classic.ndcg(mono, corpus, args.dcg_base, subset)
        for row, d, nd in zip(mono, dcg_values, ndcg_values):
            rows.append(
                [
                    ranking.topic_id,
                    row.rank,
                    row.doc_id,
                    row.total_rel,
                    row.avg_rel,
                    *(row.binary_at[t] for t in thresholds),
                    *(row.p_at_k[t] for t in thresholds),
                    row.total_cg,
                    row.avg_cg,
                    d,
                    nd,
                ]
            )
        if mono:
            ap_values = [
                classic.average_precision(mono, corpus, t, subset) for t in thresholds
            ]
            rows.append(
                [
                    ranking.topic_id,
                    "ap",
                    None,
                    None,
                    None,
                    *(None for _ in thresholds),
                    *ap_values,
                    None,
                    None,
                    None,
                    None,
                ]
            )
    meta = {"kind": "classic", "thresholds": list(thresholds), "dcg_base": args.dcg_base}
    return fileio.write_table(header, rows, args.format, meta)


COMMANDS = {
    "score": cmd_score,
    "ideal": cmd_ideal,
    "normalize": cmd_normalize,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "classic": cmd_classic,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    try:
        payload = COMMANDS[args.command](args)
    except MdcuError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
