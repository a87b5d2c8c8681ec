import itertools

import pytest
from hypothesis import given, strategies as st

from gecclean.textmetrics import (
    jaccard_similarity,
    levenshtein_distance,
    levenshtein_ratio,
)
from oracles import levenshtein_recursive

short_text = st.text(alphabet="ab我。", max_size=8)


class TestLevenshteinDistance:
    @pytest.mark.parametrize(
        "s,t,expected",
        [
            ("", "", 0),
            ("abc", "abd", 1),
            ("", "abc", 3),
            ("abc", "", 3),
            # One deletion plus one appended period, derived with the
            # recursive oracle before the build.
            ("我能胜任这此职务", "我能胜任这职务。", 2),
        ],
    )
    def test_known_values(self, s, t, expected):
        assert levenshtein_distance(s, t) == expected

    def test_matches_recursive_oracle_on_short_pairs(self):
        strings = [
            "".join(p)
            for k in range(4)
            for p in itertools.product("abc", repeat=k)
        ]
        for s, t in itertools.product(strings, repeat=2):
            assert levenshtein_distance(s, t) == levenshtein_recursive(s, t)

    @given(short_text, short_text)
    def test_symmetry(self, s, t):
        assert levenshtein_distance(s, t) == levenshtein_distance(t, s)

    @given(short_text, short_text, short_text)
    def test_triangle_inequality(self, a, b, c):
        assert levenshtein_distance(a, c) <= levenshtein_distance(
            a, b
        ) + levenshtein_distance(b, c)

    @given(short_text, short_text)
    def test_zero_iff_equal(self, s, t):
        assert (levenshtein_distance(s, t) == 0) == (s == t)


class TestLevenshteinRatio:
    def test_identity_is_one(self):
        assert levenshtein_ratio("abc", "abc") == 1.0

    def test_empty_pair_is_one(self):
        assert levenshtein_ratio("", "") == 1.0

    def test_single_substitution(self):
        assert levenshtein_ratio("abc", "abd") == pytest.approx(5 / 6)

    def test_corpus_example(self):
        assert levenshtein_ratio("我能胜任这此职务", "我能胜任这职务。") == pytest.approx(
            14 / 16, abs=1e-12
        )

    @given(short_text, short_text)
    def test_bounds_and_symmetry(self, s, t):
        value = levenshtein_ratio(s, t)
        assert 0.0 <= value <= 1.0
        assert value == levenshtein_ratio(t, s)

    @given(short_text, short_text)
    def test_one_iff_equal(self, s, t):
        assert (levenshtein_ratio(s, t) == 1.0) == (s == t)


class TestJaccard:
    def test_identity_is_one(self):
        assert jaccard_similarity("abc", "abc") == 1.0

    def test_disjoint_is_zero(self):
        assert jaccard_similarity("ab", "cd") == 0.0

    def test_empty_pair_is_one(self):
        assert jaccard_similarity("", "") == 1.0

    def test_corpus_example(self):
        # Intersection {我,能,胜,任,这,职,务}; union adds 此 and 。.
        assert jaccard_similarity("我能胜任这此职务", "我能胜任这职务。") == pytest.approx(
            7 / 9, abs=1e-12
        )

    @given(short_text, short_text)
    def test_symmetry_and_bounds(self, s, t):
        value = jaccard_similarity(s, t)
        assert 0.0 <= value <= 1.0
        assert value == jaccard_similarity(t, s)

    @given(short_text, short_text)
    def test_invariant_under_repetition(self, s, t):
        assert jaccard_similarity(s * 3, t) == jaccard_similarity(s, t)
