"""Multidimensional cumulated-utility evaluation of ranked retrieval results.

Documents are assessed on several themes (graded relevance) and usability
attributes (factors in [0, 1]). Scoring discounts redundant theme coverage
logarithmically, weights each document by its usability, normalizes against
a greedily built ideal ordering, and recovers the classic CG/DCG/nDCG/P@k
metrics as special cases.
"""

from .classic import (
    MonoRow,
    average_precision,
    collapse_mono,
    dcg,
    ideal_mono_order,
    ndcg,
    precision_at,
)
from .fileio import (
    read_corpus,
    read_manifest,
    read_run,
    report_json,
    score_header,
    score_rows,
    write_corpus,
    write_manifest,
    write_report,
    write_table,
)
from .ideal import IdealRanking, ideal_ranking
from .model import (
    AttributeVector,
    ConfigError,
    DataError,
    DimensionError,
    DocumentRep,
    EvalConfig,
    MdcuError,
    RankedList,
    RelevanceCorpus,
    ThemeVector,
    TopicManifest,
    null_struct,
    resolve,
    vec_add,
    vec_div,
    vec_mul,
)
from .normalize import (
    GainVector,
    doc_gain,
    gain_vector,
    norm_vector,
    normalized_triple,
    theme_slice_gain,
)
from .scoring import (
    RankRow,
    ScoreReport,
    attr_fact,
    contrib,
    overlap_divisor,
    rank_discount,
    score_ranking,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeVector",
    "ConfigError",
    "DataError",
    "DimensionError",
    "DocumentRep",
    "EvalConfig",
    "GainVector",
    "IdealRanking",
    "MdcuError",
    "MonoRow",
    "RankRow",
    "RankedList",
    "RelevanceCorpus",
    "ScoreReport",
    "ThemeVector",
    "TopicManifest",
    "attr_fact",
    "average_precision",
    "collapse_mono",
    "contrib",
    "dcg",
    "doc_gain",
    "gain_vector",
    "ideal_mono_order",
    "ideal_ranking",
    "ndcg",
    "norm_vector",
    "normalized_triple",
    "null_struct",
    "overlap_divisor",
    "precision_at",
    "rank_discount",
    "read_corpus",
    "read_manifest",
    "read_run",
    "report_json",
    "resolve",
    "score_header",
    "score_ranking",
    "score_rows",
    "theme_slice_gain",
    "vec_add",
    "vec_div",
    "vec_mul",
    "write_corpus",
    "write_manifest",
    "write_report",
    "write_table",
]
