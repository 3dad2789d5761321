"""On-disk formats: topic manifests, relevance corpora, run files, reports.

Corpora are comma-delimited UTF-8 with a header row and decimal points;
run files follow the whitespace-delimited retrieval-run convention
(topic_id Q0 doc_id rank score run_tag). All report output is deterministic:
stable column order, fixed 3-decimal formatting in CSV, full precision in
JSON.
"""

import csv
import io
import json
import warnings
from dataclasses import asdict

from .ideal import IdealRanking
from .model import (
    AttributeVector,
    DataError,
    DimensionError,
    DocumentRep,
    RankedList,
    RelevanceCorpus,
    ThemeVector,
    TopicManifest,
)
from .normalize import GainVector
from .scoring import ScoreReport


def read_manifest(path) -> TopicManifest:
    """Load a topic manifest from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as e:
            raise DataError(f"{path}: not valid JSON ({e})") from e
    if not isinstance(raw, dict):
        raise DataError(f"{path}: manifest must be a JSON object")
    for key in ("topic_id", "theme_names", "attribute_names"):
        if key not in raw:
            raise DataError(f"{path}: manifest is missing {key!r}")
    scale = raw.get("theme_scale_max", 3.0)
    if isinstance(scale, (int, float)):
        scale = (float(scale),) * len(raw["theme_names"])
    per_theme_b = raw.get("per_theme_b")
    return TopicManifest(
        topic_id=str(raw["topic_id"]),
        theme_names=tuple(str(t) for t in raw["theme_names"]),
        attribute_names=tuple(str(a) for a in raw["attribute_names"]),
        theme_scale_max=tuple(scale),
        overlap_base_default=float(raw.get("overlap_base_default", 2.0)),
        per_theme_b=tuple(per_theme_b) if per_theme_b is not None else None,
    )


def write_manifest(manifest: TopicManifest) -> bytes:
    """Serialize a manifest back to its JSON form."""
    raw = {
        "topic_id": manifest.topic_id,
        "theme_names": list(manifest.theme_names),
        "attribute_names": list(manifest.attribute_names),
        "theme_scale_max": list(manifest.theme_scale_max),
        "overlap_base_default": manifest.overlap_base_default,
    }
    if manifest.per_theme_b is not None:
        raw["per_theme_b"] = list(manifest.per_theme_b)
    return (json.dumps(raw, indent=2) + "\n").encode("utf-8")


def _parse_cell(raw: str, what: str, where: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise DataError(f"{where}: {what} value {raw!r} is not a number") from None


def read_corpus(manifest_path, corpus_path) -> RelevanceCorpus:
    """Read an assessed corpus (manifest JSON + CSV of document rows).

    Theme cells must be non-negative reals; values above the manifest's scale
    maximum only warn. Attribute cells outside [0, 1] and duplicate document
    ids are hard errors, reported with their line number.
    """
    manifest = read_manifest(manifest_path)
    n, m = manifest.n, manifest.m
    docs: dict[str, DocumentRep] = {}
    with open(corpus_path, encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = None
        for row in reader:
            where = f"{corpus_path} line {reader.line_num}"
            cells = [c.strip() for c in row]
            if not any(cells):
                continue
            if header is None:
                header = cells
                if len(header) != 1 + n + m:
                    raise DimensionError(
                        f"{where}: header has {len(header)} columns, "
                        f"manifest requires {1 + n + m}"
                    )
                continue
            if len(cells) != 1 + n + m:
                raise DataError(
                    f"{where}: row has {len(cells)} columns, expected {1 + n + m}"
                )
            doc_id = cells[0]
            if not doc_id:
                raise DataError(f"{where}: empty doc_id")
            if doc_id in docs:
                raise DataError(f"{where}: duplicate document {doc_id!r}")
            themes = []
            for name, raw in zip(manifest.theme_names, cells[1 : 1 + n]):
                v = _parse_cell(raw, f"theme {name!r}", where)
                if v < 0:
                    raise DataError(f"{where}: theme {name!r} value {v} is negative")
                themes.append(v)
            for name, scale, v in zip(manifest.theme_names, manifest.theme_scale_max, themes):
                if v > scale:
                    warnings.warn(
                        f"{where}: theme {name!r} value {v} exceeds scale max {scale}"
                    )
            attrs = []
            for name, raw in zip(manifest.attribute_names, cells[1 + n :]):
                v = _parse_cell(raw, f"attribute {name!r}", where)
                if not 0 <= v <= 1:
                    raise DataError(
                        f"{where}, column {name!r}: value {v} outside [0, 1]"
                    )
                attrs.append(v)
            docs[doc_id] = DocumentRep(
                doc_id=doc_id,
                trel=ThemeVector(tuple(themes)),
                attrs=AttributeVector(tuple(attrs)),
            )
    return RelevanceCorpus(manifest=manifest, docs=docs)


def _plain_number(v: float) -> str:
    return str(int(v)) if v == int(v) else repr(v)


def write_corpus(corpus: RelevanceCorpus) -> bytes:
    """Serialize a corpus to CSV, value-exact for round-tripping."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    manifest = corpus.manifest
    writer.writerow(["doc_id", *manifest.theme_names, *manifest.attribute_names])
    for doc in corpus.docs.values():
        writer.writerow(
            [doc.doc_id]
            + [_plain_number(v) for v in doc.trel]
            + [_plain_number(v) for v in doc.attrs]
        )
    return out.getvalue().encode("utf-8")


def read_run(path) -> list[RankedList]:
    """Read a run file into one RankedList per topic, ordered by rank.

    Non-contiguous or out-of-order ranks are reordered and renumbered with a
    warning; a duplicate document within a topic is an error.
    """
    per_topic: dict[str, list[tuple[int, str]]] = {}
    tags: dict[str, str] = {}
    seen: set[tuple[str, str]] = set()
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 6:
                raise DataError(
                    f"{path} line {line_num}: expected 6 fields "
                    f"(topic Q0 doc rank score tag), got {len(parts)}"
                )
            topic_id, _q0, doc_id, rank_raw, score_raw, tag = parts
            try:
                rank = int(rank_raw)
            except ValueError:
                raise DataError(
                    f"{path} line {line_num}: rank {rank_raw!r} is not an integer"
                ) from None
            _parse_cell(score_raw, "score", f"{path} line {line_num}")
            if (topic_id, doc_id) in seen:
                raise DataError(
                    f"{path} line {line_num}: duplicate document {doc_id!r} "
                    f"for topic {topic_id!r}"
                )
            seen.add((topic_id, doc_id))
            per_topic.setdefault(topic_id, []).append((rank, doc_id))
            tags.setdefault(topic_id, tag)
    rankings = []
    for topic_id, entries in per_topic.items():
        ordered = sorted(entries, key=lambda e: e[0])
        if [rank for rank, _ in ordered] != list(range(1, len(ordered) + 1)):
            warnings.warn(
                f"{path}: ranks for topic {topic_id!r} are not consecutive from 1; "
                f"reordered and renumbered"
            )
        rankings.append(
            RankedList(
                topic_id=topic_id,
                entries=tuple(doc_id for _, doc_id in ordered),
                run_tag=tags[topic_id],
            )
        )
    return rankings


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return f"{v:.3f}"
    return str(v)


def write_table(header: list[str], rows: list[list], fmt: str = "csv", meta=None) -> bytes:
    """Render a generic table deterministically as CSV or JSON bytes."""
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])
        return out.getvalue().encode("utf-8")
    if fmt == "json":
        payload = dict(meta) if meta else {}
        payload["rows"] = [dict(zip(header, row)) for row in rows]
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    raise DataError(f"unknown output format {fmt!r}")


def _theme_names(report: ScoreReport) -> list[str]:
    if report.theme_names:
        return list(report.theme_names)
    return [f"theme_{i + 1}" for i in range(len(report.theme_totals))]


def score_header(report: ScoreReport) -> list[str]:
    return [
        "topic",
        "rank",
        "doc_id",
        "face_total",
        *_theme_names(report),
        "contrib_sum",
        "usability",
        "doc_score",
        "cum_utility",
    ]


def score_rows(report: ScoreReport) -> list[list]:
    rows: list[list] = []
    for row in report.rows:
        rows.append(
            [
                report.topic_id,
                row.rank,
                row.doc_id,
                row.face_total,
                *row.theme_contribs,
                row.contrib_sum,
                row.usability,
                row.doc_score,
                row.cum_utility,
            ]
        )
    if report.rows:
        rows.append(
            [
                report.topic_id,
                "sum",
                None,
                sum(r.face_total for r in report.rows),
                *report.theme_totals,
                report.theme_totals_sum,
                None,
                None,
                None,
            ]
        )
    return rows


def report_json(report: ScoreReport) -> dict:
    return {
        "kind": "score_report",
        "topic_id": report.topic_id,
        "theme_names": _theme_names(report),
        "config": asdict(report.config_echo),
        "unjudged_count": report.unjudged_count,
        "rows": [
            {
                "rank": row.rank,
                "doc_id": row.doc_id,
                "face_total": row.face_total,
                "theme_contribs": list(row.theme_contribs),
                "contrib_sum": row.contrib_sum,
                "usability": row.usability,
                "doc_score": row.doc_score,
                "cum_utility": row.cum_utility,
            }
            for row in report.rows
        ],
        "theme_totals": list(report.theme_totals),
        "theme_totals_sum": report.theme_totals_sum,
    }


def write_report(report, fmt: str = "csv") -> bytes:
    """Serialize a score report, ideal ranking, or gain vector group.

    CSV mirrors the scoring table layout (3-decimal display); JSON keeps full
    precision and embeds the configuration and the unjudged-document count.
    """
    if isinstance(report, ScoreReport):
        if fmt == "json":
            return (json.dumps(report_json(report), indent=2) + "\n").encode("utf-8")
        return write_table(score_header(report), score_rows(report), fmt)
    if isinstance(report, IdealRanking):
        if fmt == "json":
            payload = report_json(report.report)
            payload["kind"] = "ideal_ranking"
            payload["ordering"] = list(report.ordering)
            return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
        return write_table(score_header(report.report), score_rows(report.report), fmt)
    if isinstance(report, GainVector):
        report = (report,)
    if isinstance(report, (list, tuple)) and report and all(
        isinstance(g, GainVector) for g in report
    ):
        lengths = {len(g) for g in report}
        if len(lengths) > 1:
            raise DimensionError(f"gain vector lengths differ: {sorted(lengths)}")
        if fmt == "json":
            payload = {
                "kind": "gain_vectors",
                "vectors": [{"kind": g.kind, "values": list(g.values)} for g in report],
            }
            return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
        header = ["rank", *(g.kind for g in report)]
        rows = [[i + 1, *(g[i] for g in report)] for i in range(len(report[0]))]
        return write_table(header, rows, fmt)
    raise DataError(f"cannot serialize {type(report).__name__} as a report")
