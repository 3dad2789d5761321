"""Domain types and tuple algebra for multidimensional relevance scoring.

A topic is assessed along n themes (graded, non-negative relevance) and m
usability attributes (factors in [0, 1]). Documents are immutable value
objects; everything downstream is a pure function over them.
"""

from dataclasses import dataclass, field
from typing import Iterator


class MdcuError(ValueError):
    """Base class for all domain errors raised by this package."""


class DimensionError(MdcuError):
    """Vector lengths disagree with each other or with the topic manifest."""


class ConfigError(MdcuError):
    """An evaluation parameter is outside its legal range."""


class DataError(MdcuError):
    """Input data violates a structural invariant (duplicates, bad cells, ...)."""


@dataclass(frozen=True)
class ThemeVector:
    """Per-theme relevance mass: an ordered tuple of non-negative reals.

    Used both for a document's assessed theme scores and for the running
    cumulated mass of a ranking.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for i, v in enumerate(self.values):
            if not v >= 0:
                raise DataError(f"theme component {i + 1} is {v}, must be >= 0")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def total(self) -> float:
        return sum(self.values)


@dataclass(frozen=True)
class AttributeVector:
    """Per-attribute usability factors, each in [0, 1]."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for i, v in enumerate(self.values):
            if not 0 <= v <= 1:
                raise DataError(f"attribute component {i + 1} is {v}, must be in [0, 1]")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


@dataclass(frozen=True)
class DocumentRep:
    """An assessed document: identifier, theme scores, attribute factors.

    The document text itself is never inspected; the id is opaque.
    """

    doc_id: str
    trel: ThemeVector
    attrs: AttributeVector

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise DataError("doc_id must be a non-empty string")

    def __getitem__(self, part: int):
        """Positional access: d[1] id, d[2] theme vector, d[3] attribute vector."""
        if part == 1:
            return self.doc_id
        if part == 2:
            return self.trel
        if part == 3:
            return self.attrs
        raise IndexError(f"document part {part} not defined (use 1, 2 or 3)")

    def face_total(self) -> float:
        """Sum of raw theme scores, before any discounting."""
        return self.trel.total()


@dataclass(frozen=True)
class TopicManifest:
    """Declares a topic's themes, attributes and assessment scales."""

    topic_id: str
    theme_names: tuple[str, ...]
    attribute_names: tuple[str, ...]
    theme_scale_max: tuple[float, ...] = ()
    overlap_base_default: float = 2.0
    per_theme_b: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "theme_names", tuple(self.theme_names))
        object.__setattr__(self, "attribute_names", tuple(self.attribute_names))
        if len(self.theme_names) < 1:
            raise DimensionError("a topic needs at least one theme")
        if not self.theme_scale_max:
            object.__setattr__(self, "theme_scale_max", (3.0,) * len(self.theme_names))
        else:
            object.__setattr__(
                self, "theme_scale_max", tuple(float(s) for s in self.theme_scale_max)
            )
        if len(self.theme_scale_max) != len(self.theme_names):
            raise DimensionError(
                f"{len(self.theme_scale_max)} scale maxima for "
                f"{len(self.theme_names)} themes"
            )
        for s in self.theme_scale_max:
            if not s > 0:
                raise ConfigError(f"theme scale max {s} must be > 0")
        if not self.overlap_base_default > 1:
            raise ConfigError(
                f"overlap base {self.overlap_base_default} must be > 1"
            )
        if self.per_theme_b is not None:
            object.__setattr__(self, "per_theme_b", tuple(float(b) for b in self.per_theme_b))
            if len(self.per_theme_b) != len(self.theme_names):
                raise DimensionError(
                    f"{len(self.per_theme_b)} per-theme bases for "
                    f"{len(self.theme_names)} themes"
                )
            for b in self.per_theme_b:
                if not b > 1:
                    raise ConfigError(f"per-theme base {b} must be > 1")

    @property
    def n(self) -> int:
        return len(self.theme_names)

    @property
    def m(self) -> int:
        return len(self.attribute_names)


@dataclass(frozen=True)
class RelevanceCorpus:
    """All assessed documents for one topic, keyed by doc_id.

    Anything not present is implicitly non-relevant: resolve() answers with
    zero vectors rather than failing.
    """

    manifest: TopicManifest
    docs: dict[str, DocumentRep] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, doc in self.docs.items():
            if key != doc.doc_id:
                raise DataError(f"corpus key {key!r} does not match doc_id {doc.doc_id!r}")
            if len(doc.trel) != self.manifest.n:
                raise DimensionError(
                    f"document {doc.doc_id}: {len(doc.trel)} theme scores, "
                    f"manifest declares {self.manifest.n}"
                )
            if len(doc.attrs) != self.manifest.m:
                raise DimensionError(
                    f"document {doc.doc_id}: {len(doc.attrs)} attribute scores, "
                    f"manifest declares {self.manifest.m}"
                )

    def __len__(self) -> int:
        return len(self.docs)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.docs


@dataclass(frozen=True)
class RankedList:
    """An ordered search result for one topic; position index is the rank."""

    topic_id: str
    entries: tuple[str, ...]
    run_tag: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for doc_id in self.entries:
            if doc_id in seen:
                raise DataError(
                    f"duplicate document {doc_id!r} in ranking for topic {self.topic_id!r}"
                )
            seen.add(doc_id)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class EvalConfig:
    """Scoring switches: overlap base, usability factors, rank discount.

    b is the logarithm base of the overlap discount; per_theme_b, when set,
    overrides it theme by theme. The three *_on flags toggle the independent
    discount families.
    """

    b: float = 2.0
    per_theme_b: tuple[float, ...] | None = None
    overlap_on: bool = True
    attributes_on: bool = True
    rank_discount_on: bool = False
    rank_discount_base: float = 2.0

    def __post_init__(self) -> None:
        if not self.b > 1:
            raise ConfigError(f"overlap base b={self.b} must be > 1")
        if self.per_theme_b is not None:
            object.__setattr__(self, "per_theme_b", tuple(float(x) for x in self.per_theme_b))
            for i, x in enumerate(self.per_theme_b):
                if not x > 1:
                    raise ConfigError(f"per-theme base {x} (theme {i + 1}) must be > 1")
        if not self.rank_discount_base > 1:
            raise ConfigError(
                f"rank discount base {self.rank_discount_base} must be > 1"
            )

    def theme_base(self, index: int) -> float:
        """Overlap log base for the 0-based theme index."""
        if self.per_theme_b is not None:
            return self.per_theme_b[index]
        return self.b


def null_struct(n: int) -> ThemeVector:
    """Zero vector of length n; the starting cumulated mass of any ranking."""
    if n < 1:
        raise DimensionError(f"vector length must be >= 1, got {n}")
    return ThemeVector((0.0,) * n)


def _check_same_length(a: ThemeVector, b: ThemeVector) -> None:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths differ: {len(a)} vs {len(b)}")


def vec_add(a: ThemeVector, b: ThemeVector) -> ThemeVector:
    _check_same_length(a, b)
    return ThemeVector(tuple(x + y for x, y in zip(a, b)))


def vec_mul(a: ThemeVector, b: ThemeVector) -> ThemeVector:
    _check_same_length(a, b)
    return ThemeVector(tuple(x * y for x, y in zip(a, b)))


def vec_div(a: ThemeVector, b: ThemeVector) -> ThemeVector:
    """Componentwise quotient; a zero denominator component yields 0.

    The convention exists for gain normalization, where a zero ideal gain can
    only pair with a zero observed gain and crediting anything would be wrong.
    """
    _check_same_length(a, b)
    return ThemeVector(tuple(x / y if y != 0 else 0.0 for x, y in zip(a, b)))


def resolve(corpus: RelevanceCorpus, doc_id: str) -> DocumentRep:
    """Look up an assessed document, defaulting unjudged ids to zero vectors.

    Never fails: a document outside the corpus simply contributes nothing.
    Callers that need to report coverage count membership separately.
    """
    doc = corpus.docs.get(doc_id)
    if doc is not None:
        return doc
    return DocumentRep(
        doc_id=doc_id,
        trel=null_struct(corpus.manifest.n),
        attrs=AttributeVector((0.0,) * corpus.manifest.m),
    )
