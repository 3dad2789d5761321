"""Rank-wise scoring of a result list under overlap and usability discounts.

Per rank, a document's theme scores are divided by a logarithm of the
relevance mass already accumulated on each theme, so redundant content earns
less the later it appears. The discounted contribution is then weighted by
the document's usability factor (product of its attributes) and, optionally,
by a classic rank-based discount.
"""

import math
from dataclasses import dataclass

from .model import (
    ConfigError,
    DimensionError,
    DocumentRep,
    EvalConfig,
    RankedList,
    RelevanceCorpus,
    ThemeVector,
    null_struct,
    resolve,
    vec_add,
)


@dataclass(frozen=True)
class RankRow:
    """One rank of a scored result list.

    theme_contribs holds the overlap-discounted increments per theme, free of
    any usability weighting; doc_score folds the usability factor (and the
    rank discount, when enabled) into their sum.
    """

    rank: int
    doc_id: str
    face_total: float
    theme_contribs: ThemeVector
    contrib_sum: float
    usability: float
    doc_score: float
    cum_utility: float


@dataclass(frozen=True)
class ScoreReport:
    """Scored ranking plus per-theme totals of the accumulated mass.

    theme_totals is the final cumulated relevance per theme (usability-free),
    so it is invariant under any rescaling of attribute vectors.
    """

    rows: tuple[RankRow, ...]
    theme_totals: ThemeVector
    theme_totals_sum: float
    config_echo: EvalConfig
    unjudged_count: int
    topic_id: str = ""
    theme_names: tuple[str, ...] = ()


def attr_fact(d: DocumentRep, config: EvalConfig) -> float:
    """Gross usability of a document: the product of its attribute factors.

    Returns 1.0 when attribute discounting is off or the document has no
    attributes (empty product).
    """
    if not config.attributes_on:
        return 1.0
    return math.prod(d.attrs)


def overlap_divisor(cum_mass: float, b: float, overlap_on: bool = True) -> float:
    """Divisor applied to a theme score given the mass already accumulated.

    Stays at 1 until cum_mass exceeds the log base b (which also covers
    masses in [0, 1], where the logarithm would be undefined or negative),
    then grows as log_b(cum_mass).
    """
    if not b > 1:
        raise ConfigError(f"overlap base b={b} must be > 1")
    if not overlap_on or cum_mass <= b:
        return 1.0
    return math.log(cum_mass) / math.log(b)


def contrib(crr: ThemeVector, d: DocumentRep, config: EvalConfig) -> ThemeVector:
    """Incremental discounted theme contribution of d given accumulated crr.

    Returns the usability-free increment vector: each theme score divided by
    overlap_divisor of the mass already on that theme. Callers add it to crr
    and apply the usability factor to its sum separately.
    """
    if len(crr) != len(d.trel):
        raise DimensionError(
            f"accumulated vector has {len(crr)} themes, document {d.doc_id} has {len(d.trel)}"
        )
    if config.per_theme_b is not None and len(config.per_theme_b) != len(crr):
        raise DimensionError(
            f"{len(config.per_theme_b)} per-theme bases for {len(crr)} themes"
        )
    return ThemeVector(
        tuple(
            d.trel[i] / overlap_divisor(crr[i], config.theme_base(i), config.overlap_on)
            for i in range(len(crr))
        )
    )


def rank_discount(rank: int, config: EvalConfig) -> float:
    """Classic rank-based discount: max(1, log_base(rank))."""
    if rank <= config.rank_discount_base:
        return 1.0
    return math.log(rank) / math.log(config.rank_discount_base)


def score_ranking(
    ranking: RankedList, corpus: RelevanceCorpus, config: EvalConfig
) -> ScoreReport:
    """Score a ranked list against a relevance corpus.

    Walks ranks 1..k keeping the per-theme accumulated mass crr (initially
    zero). At each rank the document's discounted increment is computed from
    the current crr, its sum is weighted by the usability factor (and divided
    by the rank discount when enabled) to give the document score, and the
    increment is folded into crr. Documents absent from the corpus score zero
    and are counted as unjudged.
    """
    n = corpus.manifest.n
    if config.per_theme_b is not None and len(config.per_theme_b) != n:
        raise DimensionError(
            f"{len(config.per_theme_b)} per-theme bases, manifest declares {n} themes"
        )
    crr = null_struct(n)
    rows: list[RankRow] = []
    cum = 0.0
    unjudged = 0
    for rank, doc_id in enumerate(ranking.entries, start=1):
        if doc_id not in corpus:
            unjudged += 1
        d = resolve(corpus, doc_id)
        delta = contrib(crr, d, config)
        contrib_sum = delta.total()
        doc_score = attr_fact(d, config) * contrib_sum
        if config.rank_discount_on:
            doc_score /= rank_discount(rank, config)
        cum += doc_score
        crr = vec_add(crr, delta)
        rows.append(
            RankRow(
                rank=rank,
                doc_id=doc_id,
                face_total=d.face_total(),
                theme_contribs=delta,
                contrib_sum=contrib_sum,
                usability=attr_fact(d, config),
                doc_score=doc_score,
                cum_utility=cum,
            )
        )
    return ScoreReport(
        rows=tuple(rows),
        theme_totals=crr,
        theme_totals_sum=crr.total(),
        config_echo=config,
        unjudged_count=unjudged,
        topic_id=ranking.topic_id,
        theme_names=corpus.manifest.theme_names,
    )
