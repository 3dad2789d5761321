"""Cumulated gain vectors and normalization against the ideal ordering."""

import warnings
from dataclasses import dataclass
from typing import Iterator

from .model import DataError, DimensionError, DocumentRep, EvalConfig
from .scoring import ScoreReport, attr_fact, rank_discount

GAIN_KINDS = ("observed", "ideal", "normalized")


@dataclass(frozen=True)
class GainVector:
    """A per-rank cumulated gain curve.

    kind is one of "observed", "ideal" or "normalized". Observed and ideal
    curves are prefix sums of non-negative document gains and must be
    non-decreasing; normalized values are ratios and may exceed 1 (reported,
    never clamped).
    """

    values: tuple[float, ...]
    kind: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.kind not in GAIN_KINDS:
            raise DataError(f"unknown gain vector kind {self.kind!r}")
        for i, v in enumerate(self.values):
            if not v >= 0:
                raise DataError(f"gain at rank {i + 1} is {v}, must be >= 0")
        if self.kind in ("observed", "ideal"):
            for i in range(1, len(self.values)):
                if self.values[i] < self.values[i - 1] - 1e-9:
                    raise DataError(
                        f"{self.kind} gain decreases at rank {i + 1}: "
                        f"{self.values[i - 1]} -> {self.values[i]}"
                    )

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


def doc_gain(d: DocumentRep, config: EvalConfig) -> float:
    """Usability-weighted sum of a document's theme scores.

    The vector is taken as given: pass raw scores for a context-free gain, or
    a row's already-discounted contributions for the in-ranking gain. With
    rank discounting off this equals the document score at its rank.
    """
    return attr_fact(d, config) * d.trel.total()


def gain_vector(report: ScoreReport, k: int, kind: str = "observed") -> GainVector:
    """First k values of the report's cumulative utility curve."""
    if not 1 <= k <= len(report.rows):
        raise DataError(
            f"cutoff {k} outside report range 1..{len(report.rows)}"
        )
    return GainVector((row.cum_utility for row in report.rows[:k]), kind)


def norm_vector(sg: GainVector, ig: GainVector) -> GainVector:
    """Componentwise ratio of observed to ideal gain.

    A zero ideal component yields 0 rather than dividing (nothing attainable,
    nothing credited). Components above 1 are legal but reported with a
    warning, since they mean the observed ranking beat the greedy ideal.
    """
    if len(sg) != len(ig):
        raise DimensionError(f"gain vector lengths differ: {len(sg)} vs {len(ig)}")
    values = tuple(s / i if i != 0 else 0.0 for s, i in zip(sg, ig))
    over = [r + 1 for r, v in enumerate(values) if v > 1 + 1e-9]
    if over:
        warnings.warn(
            f"normalized gain exceeds 1 at ranks {over}; greedy ideal was beaten",
            stacklevel=2,
        )
    return GainVector(values, "normalized")


def theme_slice_gain(report: ScoreReport, theme_subset, kind: str = "observed") -> GainVector:
    """Cumulated gain restricted to a subset of themes (1-based positions).

    Each rank contributes the usability-weighted sum of its discounted
    contributions on the selected themes, divided by the rank discount when
    that is enabled, so the slice over all themes reproduces the full gain
    curve under any configuration.
    """
    if not theme_subset:
        raise DimensionError("theme subset must not be empty")
    n = len(report.theme_totals)
    indices = sorted(set(int(t) for t in theme_subset))
    for t in indices:
        if not 1 <= t <= n:
            raise DimensionError(f"theme index {t} outside 1..{n}")
    config = report.config_echo
    values = []
    cum = 0.0
    for row in report.rows:
        gain = row.usability * sum(row.theme_contribs[t - 1] for t in indices)
        if config.rank_discount_on:
            gain /= rank_discount(row.rank, config)
        cum += gain
        values.append(cum)
    return GainVector(values, kind)


def normalized_triple(
    observed: ScoreReport,
    ideal_report: ScoreReport,
    k: int | None = None,
    theme_subset=None,
) -> tuple[GainVector, GainVector, GainVector]:
    """Observed, ideal and normalized gain curves over a shared cutoff.

    k defaults to the observed ranking's length. An ideal shorter than k (a
    run listing more documents than the corpus holds) is extended flat, since
    further documents cannot add ideal gain; a longer one is truncated.
    """
    if k is None:
        k = len(observed.rows)
    if not 1 <= k <= len(observed.rows):
        raise DataError(f"cutoff {k} outside report range 1..{len(observed.rows)}")
    if theme_subset is None:
        sg = gain_vector(observed, k, "observed")
        ideal_values = [row.cum_utility for row in ideal_report.rows]
    else:
        sg = GainVector(theme_slice_gain(observed, theme_subset).values[:k], "observed")
        ideal_values = list(theme_slice_gain(ideal_report, theme_subset).values)
    if not ideal_values:
        raise DataError("ideal report is empty")
    while len(ideal_values) < k:
        ideal_values.append(ideal_values[-1])
    ig = GainVector(ideal_values[:k], "ideal")
    return sg, ig, norm_vector(sg, ig)
