"""Greedy construction of a reference ordering of the corpus.

At each rank the document with the greatest residual contribution is chosen:
its overlap-discounted theme increment against the mass accumulated so far,
weighted by its usability factor. The resulting ordering is then re-scored
through the ordinary scoring path, so the emitted report is exactly what
score_ranking would produce for it.

Greedy selection is a heuristic, not a guarantee: because a pick saturates
its themes for everyone after it, another ordering can overtake the greedy
one at some prefix (norm_vector reports, and warns on, ratios above 1).
"""

from dataclasses import dataclass

from .model import DataError, EvalConfig, RankedList, RelevanceCorpus, null_struct, vec_add
from .scoring import ScoreReport, attr_fact, contrib, score_ranking


@dataclass(frozen=True)
class IdealRanking:
    """A permutation of the corpus doc_ids and its score report."""

    ordering: tuple[str, ...]
    report: ScoreReport


def ideal_ranking(corpus: RelevanceCorpus, config: EvalConfig) -> IdealRanking:
    """Greedily order the whole corpus by residual contribution.

    Ties are broken by ascending doc_id, which also fixes the placement of
    zero-contribution documents at the tail. The selection compares
    usability-weighted discounted increments; the rank discount, when
    enabled, divides every candidate at a given rank equally and so never
    changes a choice. Deterministic for identical inputs.
    """
    if not corpus.docs:
        raise DataError("cannot build an ideal ranking from an empty corpus")
    crr = null_struct(corpus.manifest.n)
    remaining = sorted(corpus.docs)
    ordering: list[str] = []
    while remaining:
        best_id = remaining[0]
        best_delta = contrib(crr, corpus.docs[best_id], config)
        best_residual = attr_fact(corpus.docs[best_id], config) * best_delta.total()
        for doc_id in remaining[1:]:
            delta = contrib(crr, corpus.docs[doc_id], config)
            residual = attr_fact(corpus.docs[doc_id], config) * delta.total()
            if residual > best_residual:
                best_id, best_delta, best_residual = doc_id, delta, residual
        ordering.append(best_id)
        remaining.remove(best_id)
        crr = vec_add(crr, best_delta)
    ranking = RankedList(topic_id=corpus.manifest.topic_id, entries=tuple(ordering))
    return IdealRanking(ordering=tuple(ordering), report=score_ranking(ranking, corpus, config))
