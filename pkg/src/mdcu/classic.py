"""Mono-dimensional collapse and the traditional ranking metrics.

Summing theme scores per document reduces the multidimensional assessment to
a single graded value, on which the classic measures (CG, DCG, nDCG, P@k,
average precision) are computed. These double as special-case checks of the
full pipeline: with attributes off, rank discount off and an overlap base
larger than any attainable mass, cumulative utility degenerates to plain CG.
"""

import math
from dataclasses import dataclass, field

from .model import DataError, DimensionError, RankedList, RelevanceCorpus, resolve

DEFAULT_THRESHOLDS = (1.0, 2.0)


@dataclass(frozen=True)
class MonoRow:
    """One rank of a collapsed, mono-dimensional evaluation."""

    rank: int
    doc_id: str
    total_rel: float
    avg_rel: float
    binary_at: dict[float, int] = field(default_factory=dict)
    p_at_k: dict[float, float] = field(default_factory=dict)
    total_cg: float = 0.0
    avg_cg: float = 0.0


def _subset_indices(n: int, theme_subset) -> list[int]:
    if theme_subset is None:
        return list(range(1, n + 1))
    indices = sorted(set(int(t) for t in theme_subset))
    if not indices:
        raise DimensionError("theme subset must not be empty")
    for t in indices:
        if not 1 <= t <= n:
            raise DimensionError(f"theme index {t} outside 1..{n}")
    return indices


def _mono_rel(corpus: RelevanceCorpus, doc_id: str, indices: list[int]) -> float:
    d = resolve(corpus, doc_id)
    return sum(d.trel[t - 1] for t in indices)


def collapse_mono(
    ranking: RankedList,
    corpus: RelevanceCorpus,
    thresholds=DEFAULT_THRESHOLDS,
    theme_subset=None,
) -> list[MonoRow]:
    """Collapse a ranking to summed (total) and averaged theme relevance.

    The average divides by the number of selected themes; binarization and
    prefix precision are computed per threshold on that average. Unjudged
    documents collapse to zero.
    """
    indices = _subset_indices(corpus.manifest.n, theme_subset)
    rows: list[MonoRow] = []
    cg = 0.0
    hits = {t: 0 for t in thresholds}
    for rank, doc_id in enumerate(ranking.entries, start=1):
        total = _mono_rel(corpus, doc_id, indices)
        avg = total / len(indices)
        cg += total
        binary = {}
        p_at = {}
        for t in thresholds:
            rel = 1 if avg >= t else 0
            hits[t] += rel
            binary[t] = rel
            p_at[t] = hits[t] / rank
        rows.append(
            MonoRow(
                rank=rank,
                doc_id=doc_id,
                total_rel=total,
                avg_rel=avg,
                binary_at=binary,
                p_at_k=p_at,
                total_cg=cg,
                avg_cg=cg / len(indices),
            )
        )
    return rows


def precision_at(rows: list[MonoRow], threshold: float) -> list[float]:
    """Prefix precision after binarizing avg_rel at the threshold (>=)."""
    if threshold < 0:
        raise DataError(f"threshold {threshold} must be >= 0")
    out = []
    hits = 0
    for rank, row in enumerate(rows, start=1):
        if row.avg_rel >= threshold:
            hits += 1
        out.append(hits / rank)
    return out


def dcg(rows: list[MonoRow], base: float = 2.0) -> list[float]:
    """Discounted cumulated gain: total_rel divided by max(1, log_base rank)."""
    if not base > 1:
        raise DataError(f"dcg base {base} must be > 1")
    out = []
    cum = 0.0
    for row in rows:
        discount = max(1.0, math.log(row.rank) / math.log(base))
        cum += row.total_rel / discount
        out.append(cum)
    return out


def ideal_mono_order(corpus: RelevanceCorpus, theme_subset=None) -> list[str]:
    """Corpus doc_ids by descending collapsed relevance, ties by ascending id."""
    indices = _subset_indices(corpus.manifest.n, theme_subset)
    return sorted(corpus.docs, key=lambda doc_id: (-_mono_rel(corpus, doc_id, indices), doc_id))


def ndcg(
    rows: list[MonoRow],
    corpus: RelevanceCorpus,
    base: float = 2.0,
    theme_subset=None,
) -> list[float]:
    """DCG normalized by the best mono ordering of the corpus.

    The ideal curve is extended flat past the corpus size (further documents
    are unjudged and gain nothing); a zero ideal component normalizes to 0.
    """
    if not corpus.docs:
        raise DataError("cannot compute ndcg against an empty corpus")
    order = ideal_mono_order(corpus, theme_subset)
    ideal_ranking = RankedList(topic_id=corpus.manifest.topic_id, entries=tuple(order))
    ideal_dcg = dcg(collapse_mono(ideal_ranking, corpus, (), theme_subset), base)
    while len(ideal_dcg) < len(rows):
        ideal_dcg.append(ideal_dcg[-1])
    return [
        row_dcg / ideal_dcg[i] if ideal_dcg[i] != 0 else 0.0
        for i, row_dcg in enumerate(dcg(rows, base))
    ]


def average_precision(
    rows: list[MonoRow],
    corpus: RelevanceCorpus,
    threshold: float = 1.0,
    theme_subset=None,
) -> float:
    """Binary average precision at the threshold.

    Precision is taken at each rank holding a relevant document and averaged
    over the number of relevant documents in the corpus, so unretrieved
    relevant documents count against the run. Returns 0 when the corpus has
    no relevant document.
    """
    indices = _subset_indices(corpus.manifest.n, theme_subset)
    relevant_total = sum(
        1
        for doc_id in corpus.docs
        if _mono_rel(corpus, doc_id, indices) / len(indices) >= threshold
    )
    if relevant_total == 0:
        return 0.0
    hits = 0
    precision_sum = 0.0
    for rank, row in enumerate(rows, start=1):
        if row.avg_rel >= threshold:
            hits += 1
            precision_sum += hits / rank
    return precision_sum / relevant_total
