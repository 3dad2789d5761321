"""Randomized invariants over corpora, rankings and configurations."""

import math
import tempfile
from pathlib import Path

from hypothesis import given, settings, strategies as st

from mdcu import (
    AttributeVector,
    DocumentRep,
    EvalConfig,
    RankedList,
    RelevanceCorpus,
    ThemeVector,
    TopicManifest,
    collapse_mono,
    gain_vector,
    ideal_mono_order,
    ideal_ranking,
    ndcg,
    norm_vector,
    precision_at,
    read_corpus,
    score_ranking,
    theme_slice_gain,
    write_corpus,
    write_manifest,
    write_report,
)

# quarter-step grades keep cumulated masses clear of the overlap base
# boundary, where a divisor of 1 + epsilon makes strictness undecidable
grades = st.integers(min_value=0, max_value=20).map(lambda v: v / 4)
attr_values = st.integers(min_value=0, max_value=10).map(lambda v: v / 10)


@st.composite
def corpora(draw, min_docs=1, max_docs=7):
    n = draw(st.integers(min_value=1, max_value=4))
    m = draw(st.integers(min_value=0, max_value=3))
    count = draw(st.integers(min_value=min_docs, max_value=max_docs))
    docs = {}
    for i in range(count):
        doc_id = f"d{i}"
        trel = ThemeVector(tuple(draw(grades) for _ in range(n)))
        attrs = AttributeVector(tuple(draw(attr_values) for _ in range(m)))
        docs[doc_id] = DocumentRep(doc_id, trel, attrs)
    manifest = TopicManifest(
        topic_id="T",
        theme_names=tuple(f"t{j + 1}" for j in range(n)),
        attribute_names=tuple(f"a{j + 1}" for j in range(m)),
        theme_scale_max=(5.0,) * n,
    )
    return RelevanceCorpus(manifest=manifest, docs=docs)


@st.composite
def configs(draw):
    return EvalConfig(
        b=draw(st.sampled_from((1.1, 1.5, 2.0, 3.0, 10.0))),
        overlap_on=draw(st.booleans()),
        attributes_on=draw(st.booleans()),
        rank_discount_on=draw(st.booleans()),
        rank_discount_base=draw(st.sampled_from((1.5, 2.0, 10.0))),
    )


@st.composite
def scored_setups(draw):
    corpus = draw(corpora())
    ids = sorted(corpus.docs)
    order = tuple(draw(st.permutations(ids)))
    cut = draw(st.integers(min_value=1, max_value=len(order)))
    return corpus, RankedList("T", order[:cut]), draw(configs())


@given(scored_setups())
def test_cumulative_utility_is_monotone(setup):
    corpus, ranking, config = setup
    report = score_ranking(ranking, corpus, config)
    previous = 0.0
    for row in report.rows:
        assert row.doc_score >= 0
        assert row.cum_utility >= previous - 1e-12
        previous = row.cum_utility


@given(scored_setups())
def test_contribution_never_exceeds_raw_relevance(setup):
    corpus, ranking, config = setup
    if not config.overlap_on:
        return
    report = score_ranking(ranking, corpus, config)
    crr = [0.0] * corpus.manifest.n
    for row in report.rows:
        trel = corpus.docs[row.doc_id].trel if row.doc_id in corpus.docs else None
        for t in range(corpus.manifest.n):
            raw = trel[t] if trel is not None else 0.0
            delta = row.theme_contribs[t]
            assert delta <= raw + 1e-12
            if crr[t] <= config.theme_base(t):
                assert delta == raw
            elif raw > 0:
                divisor = math.log(crr[t]) / math.log(config.theme_base(t))
                if divisor > 1 + 1e-12:
                    assert delta < raw
            crr[t] += delta


@given(scored_setups(), st.floats(min_value=0.05, max_value=1.0))
def test_attribute_rescaling_preserves_theme_totals(setup, scale):
    corpus, ranking, config = setup
    rescaled = RelevanceCorpus(
        manifest=corpus.manifest,
        docs={
            doc_id: DocumentRep(
                doc_id, d.trel, AttributeVector(tuple(a * scale for a in d.attrs))
            )
            for doc_id, d in corpus.docs.items()
        },
    )
    a = score_ranking(ranking, corpus, config)
    b = score_ranking(ranking, rescaled, config)
    assert a.theme_totals == b.theme_totals


@given(scored_setups())
def test_swapping_adjacent_ranks_only_disturbs_the_tail(setup):
    corpus, ranking, config = setup
    if len(ranking.entries) < 2:
        return
    entries = list(ranking.entries)
    i = len(entries) // 2 - 1 if len(entries) > 2 else 0
    entries[i], entries[i + 1] = entries[i + 1], entries[i]
    swapped = score_ranking(RankedList("T", tuple(entries)), corpus, config)
    original = score_ranking(ranking, corpus, config)
    assert original.rows[:i] == swapped.rows[:i]


@given(scored_setups())
def test_gain_vector_is_the_cumulative_prefix(setup):
    corpus, ranking, config = setup
    report = score_ranking(ranking, corpus, config)
    k = len(report.rows)
    assert list(gain_vector(report, k)) == [row.cum_utility for row in report.rows]


@given(scored_setups())
def test_self_normalization_is_one_or_zero(setup):
    corpus, ranking, config = setup
    report = score_ranking(ranking, corpus, config)
    gv = gain_vector(report, len(report.rows))
    for value, raw in zip(norm_vector(gv, gv), gv):
        assert value == (1.0 if raw > 0 else 0.0)


@given(scored_setups())
def test_singleton_theme_slices_sum_to_the_full_curve(setup):
    corpus, ranking, config = setup
    report = score_ranking(ranking, corpus, config)
    slices = [
        theme_slice_gain(report, (t,)) for t in range(1, corpus.manifest.n + 1)
    ]
    full = gain_vector(report, len(report.rows))
    for rank in range(len(report.rows)):
        total = sum(s[rank] for s in slices)
        assert math.isclose(total, full[rank], rel_tol=1e-12, abs_tol=1e-12)


@given(scored_setups())
def test_huge_base_and_unit_attributes_recover_plain_cg(setup):
    corpus, ranking, _config = setup
    config = EvalConfig(b=1e9, attributes_on=False)
    report = score_ranking(ranking, corpus, config)
    mono = collapse_mono(ranking, corpus, ())
    for row, mono_row in zip(report.rows, mono):
        assert math.isclose(row.cum_utility, mono_row.total_cg, abs_tol=1e-9)


@given(scored_setups())
def test_overlap_off_scores_every_document_at_face_value(setup):
    corpus, ranking, _config = setup
    config = EvalConfig(b=1.5, overlap_on=False)
    report = score_ranking(ranking, corpus, config)
    for row in report.rows:
        d = corpus.docs.get(row.doc_id)
        expected = 0.0 if d is None else row.usability * d.trel.total()
        assert math.isclose(row.doc_score, expected, abs_tol=1e-12)


@given(corpora(), configs())
def test_greedy_first_pick_is_the_best_single_document(corpus, config):
    idl = ideal_ranking(corpus, config)
    best = idl.report.rows[0].doc_score
    for doc_id in corpus.docs:
        single = score_ranking(RankedList("T", (doc_id,)), corpus, config)
        assert single.rows[0].doc_score <= best + 1e-12


@given(corpora(), configs())
def test_greedy_ideal_is_deterministic(corpus, config):
    assert ideal_ranking(corpus, config) == ideal_ranking(corpus, config)


@given(scored_setups())
def test_report_bytes_are_deterministic(setup):
    corpus, ranking, config = setup
    report = score_ranking(ranking, corpus, config)
    for fmt in ("csv", "json"):
        assert write_report(report, fmt) == write_report(report, fmt)


@given(corpora())
@settings(max_examples=30)
def test_corpus_round_trip(corpus):
    with tempfile.TemporaryDirectory() as tmp:
        mpath = Path(tmp) / "m.json"
        cpath = Path(tmp) / "c.csv"
        mpath.write_bytes(write_manifest(corpus.manifest))
        cpath.write_bytes(write_corpus(corpus))
        again = read_corpus(mpath, cpath)
    assert again.manifest == corpus.manifest
    assert again.docs == corpus.docs


@given(corpora())
def test_best_mono_order_normalizes_to_one_or_zero(corpus):
    order = ideal_mono_order(corpus)
    rows = collapse_mono(RankedList("T", tuple(order)), corpus)
    for value in ndcg(rows, corpus):
        assert value in (0.0, 1.0) or math.isclose(value, 1.0, abs_tol=1e-12)


@given(scored_setups())
def test_zero_threshold_precision_is_flat_one(setup):
    corpus, ranking, _config = setup
    rows = collapse_mono(ranking, corpus)
    assert precision_at(rows, 0.0) == [1.0] * len(rows)
