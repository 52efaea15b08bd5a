import itertools

import pytest
from hypothesis import given, strategies as st

from dealias.similarity import (JaroBreakdown, Measure, jaro_breakdown,
                                jaro_similarity, jaro_winkler_similarity,
                                levenshtein_distance, levenshtein_similarity)
from oracles import lev_distance_matrix

words = st.text(alphabet="abcdefg @", max_size=16)


def test_levenshtein_distance_basics():
    assert levenshtein_distance("", "") == 0
    assert levenshtein_distance("abc", "") == 3
    assert levenshtein_distance("", "abc") == 3
    assert levenshtein_distance("kitten", "sitting") == 3
    assert levenshtein_distance("flaw", "lawn") == 2
    assert levenshtein_distance("abc", "abc") == 0


def test_levenshtein_exhaustive_against_matrix_oracle():
    alphabet = "abc"
    strings = [""]
    for k in range(1, 5):
        strings += ["".join(t) for t in itertools.product(alphabet, repeat=k)]
    for s1 in strings:
        for s2 in strings:
            assert levenshtein_distance(s1, s2) == lev_distance_matrix(s1, s2)


def test_levenshtein_similarity_values():
    assert levenshtein_similarity("", "") == 1.0
    assert levenshtein_similarity("abc", "abc") == 1.0
    assert levenshtein_similarity("abc", "") == 0.0
    assert levenshtein_similarity("martha", "marhta") == pytest.approx(1 - 2 / 6)
    # normalized by the longer string
    assert levenshtein_similarity("ab", "abcd") == 0.5


@given(words, words)
def test_levenshtein_symmetric_and_bounded(s1, s2):
    d = levenshtein_distance(s1, s2)
    assert d == levenshtein_distance(s2, s1)
    assert abs(len(s1) - len(s2)) <= d <= max(len(s1), len(s2), 0)
    sim = levenshtein_similarity(s1, s2)
    assert sim == levenshtein_similarity(s2, s1)
    assert 0.0 <= sim <= 1.0
    assert (sim == 1.0) == (s1 == s2)


@given(words, words, words)
def test_levenshtein_triangle_inequality(s1, s2, s3):
    assert (levenshtein_distance(s1, s3)
            <= levenshtein_distance(s1, s2) + levenshtein_distance(s2, s3))


def test_jaro_canonical_transposition_pair():
    b = jaro_breakdown("martha", "marhta")
    assert b == JaroBreakdown(common=6, transpositions=1, prefix_len=3,
                              jaro=pytest.approx(0.9444444444, abs=1e-9))
    assert jaro_winkler_similarity("martha", "marhta") == pytest.approx(
        0.9611111111, abs=1e-9)


def test_jaro_window_and_prefix():
    b = jaro_breakdown("dixon", "dicksonx")
    assert b.common == 4 and b.transpositions == 0 and b.prefix_len == 2
    assert b.jaro == pytest.approx(2.3 / 3, abs=1e-12)
    assert jaro_winkler_similarity("dixon", "dicksonx") == pytest.approx(
        0.8133333333, abs=1e-9)


def test_jaro_transpositions_floor_on_odd_count():
    # matched sequences abc / bca disagree at three positions -> 3 // 2 = 1
    b = jaro_breakdown("abcxxx", "bcaxxx")
    assert b.common == 6
    assert b.transpositions == 1
    assert b.jaro == pytest.approx((1 + 1 + 5 / 6) / 3, abs=1e-12)


def test_jaro_winkler_boost_is_unconditional():
    # low base similarity, shared 2-char prefix: the boost still applies
    b = jaro_breakdown("abcdefgh", "abzzzz")
    assert b.prefix_len == 2
    assert b.jaro < 0.7
    expected = b.jaro + 0.1 * 2 * (1.0 - b.jaro)
    assert jaro_winkler_similarity("abcdefgh", "abzzzz") == expected


def test_jaro_edge_cases():
    assert jaro_winkler_similarity("", "") == 1.0
    assert jaro_winkler_similarity("a", "") == 0.0
    assert jaro_winkler_similarity("", "a") == 0.0
    assert jaro_winkler_similarity("a", "a") == 1.0  # window clamps to 0
    assert jaro_winkler_similarity("a", "b") == 0.0
    assert jaro_winkler_similarity("ab", "ba") == 0.0  # no in-window match


@given(words, words)
def test_jaro_winkler_symmetric_and_bounded(s1, s2):
    jw = jaro_winkler_similarity(s1, s2)
    assert jw == jaro_winkler_similarity(s2, s1)
    assert 0.0 <= jw <= 1.0
    assert jw >= jaro_similarity(s1, s2)


@given(words)
def test_identity_scores_one(s):
    assert levenshtein_similarity(s, s) == 1.0
    assert jaro_winkler_similarity(s, s) == 1.0


def test_measure_tokens():
    assert Measure.from_token("lev") is Measure.LEVENSHTEIN
    assert Measure.from_token("jw") is Measure.JARO_WINKLER
    with pytest.raises(ValueError):
        Measure.from_token("cosine")
    assert Measure.LEVENSHTEIN.function()("abc", "abc") == 1.0
    assert Measure.JARO_WINKLER.function()("martha", "marhta") == pytest.approx(
        0.9611111111, abs=1e-9)
