import pytest

from mdcu import (
    DataError,
    DimensionError,
    RankedList,
    RelevanceCorpus,
    average_precision,
    collapse_mono,
    dcg,
    ideal_mono_order,
    ndcg,
    precision_at,
)

S1_TOTALS = [6, 4, 3, 4, 5, 2, 0, 3, 2, 10]
S1_P_AT_1 = [1.0, 1.0, 2 / 3, 0.75, 0.8, 4 / 6, 4 / 7, 0.5, 4 / 9, 0.5]


@pytest.fixture
def s1_rows(corpus, s1):
    return collapse_mono(s1, corpus)


class TestCollapseMono:
    def test_totals_and_averages(self, s1_rows):
        assert [row.total_rel for row in s1_rows] == S1_TOTALS
        assert [row.avg_rel for row in s1_rows] == [t / 4 for t in S1_TOTALS]

    def test_cumulated_gain(self, s1_rows):
        assert [row.total_cg for row in s1_rows] == [6, 10, 13, 17, 22, 24, 24, 27, 29, 39]
        assert s1_rows[-1].avg_cg == pytest.approx(9.75)

    def test_default_threshold_columns(self, s1_rows):
        assert [row.binary_at[1.0] for row in s1_rows] == [1, 1, 0, 1, 1, 0, 0, 0, 0, 1]
        assert [row.binary_at[2.0] for row in s1_rows] == [0] * 9 + [1]
        assert [row.p_at_k[1.0] for row in s1_rows] == pytest.approx(S1_P_AT_1)
        assert s1_rows[-1].p_at_k[2.0] == pytest.approx(0.1)

    def test_theme_subset(self, corpus, s1):
        rows = collapse_mono(s1, corpus, theme_subset=(3,))
        assert [row.total_rel for row in rows] == [3, 0, 2, 3, 0, 0, 0, 1, 0, 3]
        assert rows[0].avg_rel == 3.0

    def test_unjudged_documents_collapse_to_zero(self, corpus):
        rows = collapse_mono(RankedList("T1", ("dx", "d10")), corpus)
        assert rows[0].total_rel == 0.0
        assert rows[0].binary_at[1.0] == 0
        assert rows[1].total_cg == 10.0

    def test_bad_subset(self, corpus, s1):
        with pytest.raises(DimensionError):
            collapse_mono(s1, corpus, theme_subset=(9,))
        with pytest.raises(DimensionError):
            collapse_mono(s1, corpus, theme_subset=())


class TestPrecisionAt:
    def test_graded_threshold(self, s1_rows):
        assert precision_at(s1_rows, 1.0) == pytest.approx(S1_P_AT_1)
        assert precision_at(s1_rows, 2.0)[-1] == pytest.approx(0.1)

    def test_zero_threshold_accepts_everything(self, s1_rows):
        assert precision_at(s1_rows, 0.0) == [1.0] * 10

    def test_negative_threshold_rejected(self, s1_rows):
        with pytest.raises(DataError):
            precision_at(s1_rows, -0.5)

    def test_matches_collapse_columns(self, s1_rows):
        assert precision_at(s1_rows, 1.0) == [row.p_at_k[1.0] for row in s1_rows]


class TestDcg:
    def test_prefix_values(self, s1_rows):
        curve = dcg(s1_rows)
        assert curve[0] == 6.0
        assert curve[1] == 10.0
        assert curve[3] == pytest.approx(13.892789, abs=1e-6)

    def test_final_rank_discounting(self, s1_rows):
        curve = dcg(s1_rows)
        assert curve[-1] < 39.0
        assert dcg(s1_rows, base=1e9)[-1] == pytest.approx(39.0)

    def test_bad_base(self, s1_rows):
        with pytest.raises(DataError):
            dcg(s1_rows, base=1.0)


class TestIdealMonoOrder:
    def test_order(self, corpus):
        assert ideal_mono_order(corpus) == [
            "d10", "d1", "d5", "d2", "d4", "d3", "d8", "d6", "d9", "d7",
        ]

    def test_subset_order_starts_with_best_slice(self, corpus):
        order = ideal_mono_order(corpus, theme_subset=(3,))
        # d1, d4 and d10 all score 3 on the third theme; ties go by id
        assert order[:3] == ["d1", "d10", "d4"]


class TestNdcg:
    def test_ideal_normalizes_to_one(self, corpus):
        order = ideal_mono_order(corpus)
        rows = collapse_mono(RankedList("T1", tuple(order)), corpus)
        assert ndcg(rows, corpus) == pytest.approx([1.0] * 10)

    def test_observed_curve(self, s1_rows, corpus):
        curve = ndcg(s1_rows, corpus)
        assert curve[0] == pytest.approx(0.6)
        assert all(0 <= v <= 1 + 1e-9 for v in curve)

    def test_rows_longer_than_corpus_extend_flat(self, corpus):
        sub = RelevanceCorpus(corpus.manifest, {"d10": corpus.docs["d10"]})
        rows = collapse_mono(RankedList("T1", ("d10", "dx", "dy")), sub)
        assert ndcg(rows, sub) == pytest.approx([1.0, 1.0, 1.0])

    def test_empty_corpus_rejected(self, corpus, s1_rows):
        empty = RelevanceCorpus(corpus.manifest, {})
        with pytest.raises(DataError):
            ndcg(s1_rows, empty)


class TestAveragePrecision:
    def test_worked_value(self, s1_rows, corpus):
        assert average_precision(s1_rows, corpus) == pytest.approx(0.81)

    def test_unretrieved_relevant_documents_count(self, corpus):
        rows = collapse_mono(RankedList("T1", ("d10",)), corpus)
        # one hit at precision 1, but five relevant documents exist
        assert average_precision(rows, corpus) == pytest.approx(0.2)

    def test_no_relevant_documents(self, s1_rows, corpus):
        assert average_precision(s1_rows, corpus, threshold=9.0) == 0.0

    def test_subset(self, corpus, s1):
        rows = collapse_mono(s1, corpus, theme_subset=(3,))
        hits = average_precision(rows, corpus, threshold=1.0, theme_subset=(3,))
        # theme 3 relevant: d1, d3, d4, d8, d10 at ranks 1, 3, 4, 8, 10
        expected = (1 / 1 + 2 / 3 + 3 / 4 + 4 / 8 + 5 / 10) / 5
        assert hits == pytest.approx(expected)
