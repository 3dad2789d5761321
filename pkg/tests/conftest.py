"""Shared fixtures: the worked 10-document corpus and its result lists."""

from pathlib import Path

import pytest

from mdcu import (
    AttributeVector,
    DocumentRep,
    RankedList,
    RelevanceCorpus,
    ThemeVector,
    TopicManifest,
)

DATA_DIR = Path(__file__).parent / "data"

# doc_id -> (theme scores, attribute factors) of the worked example corpus
CORPUS_DOCS = {
    "d1": ((0, 1, 3, 2), (1.0, 1.0, 1.0)),
    "d2": ((2, 0, 0, 2), (0.9, 0.7, 0.9)),
    "d3": ((1, 0, 2, 0), (1.0, 0.9, 1.0)),
    "d4": ((0, 0, 3, 1), (0.8, 0.9, 0.7)),
    "d5": ((1, 2, 0, 2), (1.0, 1.0, 1.0)),
    "d6": ((0, 0, 0, 2), (1.0, 0.8, 1.0)),
    "d7": ((0, 0, 0, 0), (0.0, 0.0, 0.0)),
    "d8": ((1, 1, 1, 0), (0.3, 1.0, 1.0)),
    "d9": ((0, 0, 0, 2), (0.9, 0.9, 0.9)),
    "d10": ((3, 3, 3, 1), (1.0, 1.0, 1.0)),
}

S1_ORDER = ("d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9", "d10")
S2_ORDER = ("d6", "d7", "d8", "d9", "d10", "d1", "d2", "d3", "d4", "d5")
S3_ORDER = ("d7", "d6", "d9", "d8", "d3", "d2", "d4", "d5", "d1", "d10")


def make_corpus(docs=CORPUS_DOCS, topic_id="T1") -> RelevanceCorpus:
    manifest = TopicManifest(
        topic_id=topic_id,
        theme_names=("Theme1", "Theme2", "Theme3", "Theme4"),
        attribute_names=("Attr1", "Attr2", "Attr3"),
    )
    return RelevanceCorpus(
        manifest=manifest,
        docs={
            doc_id: DocumentRep(doc_id, ThemeVector(trel), AttributeVector(attrs))
            for doc_id, (trel, attrs) in docs.items()
        },
    )


@pytest.fixture
def corpus() -> RelevanceCorpus:
    return make_corpus()


@pytest.fixture
def s1(corpus) -> RankedList:
    return RankedList(topic_id="T1", entries=S1_ORDER, run_tag="s1")


@pytest.fixture
def s1_top6() -> RankedList:
    return RankedList(topic_id="T1", entries=S1_ORDER[:6], run_tag="s1_top6")


@pytest.fixture
def s2() -> RankedList:
    return RankedList(topic_id="T1", entries=S2_ORDER, run_tag="s2")


@pytest.fixture
def s3() -> RankedList:
    return RankedList(topic_id="T1", entries=S3_ORDER, run_tag="s3")


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
