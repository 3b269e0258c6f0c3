from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corank.rouge import ngrams, rouge_n, rouge_text, rouge_tokens


def test_ngrams():
    assert ngrams(["a", "b", "c"], 2) == Counter({("a", "b"): 1, ("b", "c"): 1})
    assert ngrams(["a"], 2) == Counter()
    assert ngrams(["a", "a", "a"], 1) == Counter({("a",): 3})
    with pytest.raises(ValueError):
        ngrams(["a"], 0)


def test_identity_and_disjoint():
    s = rouge_n(["the", "virus", "spread"], ["the", "virus", "spread"], 2)
    assert (s.recall, s.precision, s.f1) == (1.0, 1.0, 1.0)
    s = rouge_n(["cat"], ["dog"], 1)
    assert (s.recall, s.precision, s.f1) == (0.0, 0.0, 0.0)
    s = rouge_n([], [], 1)
    assert (s.recall, s.precision, s.f1) == (0.0, 0.0, 0.0)


def test_clipped_counts():
    s = rouge_n(["a", "a", "a"], ["a", "b"], 1)
    assert s.recall == 0.5
    assert s.precision == pytest.approx(1 / 3)
    assert s.f1 == pytest.approx(2 * 0.5 * (1 / 3) / (0.5 + 1 / 3))


def test_tokenization_flags():
    assert rouge_tokens("The Viruses spread.") == ["the", "viruses", "spread"]
    assert rouge_tokens("The Viruses spread.", stopwords=True) == ["viruses", "spread"]
    assert rouge_tokens("The Viruses spread.", stem=True) == ["the", "virus", "spread"]


def test_rouge_text_defaults():
    assert rouge_text("A virus.", "a VIRUS", 1).recall == 1.0
    assert rouge_text("cases", "case", 1).recall == 0.0
    assert rouge_text("cases", "case", 1, stem=True).recall == 1.0


tokens = st.lists(st.sampled_from(list("abcde")), max_size=15)


@given(tokens, tokens, st.integers(1, 3))
def test_recall_precision_symmetry(c, r, n):
    assert rouge_n(c, r, n).recall == rouge_n(r, c, n).precision


@given(tokens, tokens, st.integers(1, 3))
def test_scores_bounded(c, r, n):
    s = rouge_n(c, r, n)
    for v in (s.recall, s.precision, s.f1):
        assert 0 <= v <= 1
    if s.recall + s.precision:
        assert s.f1 == pytest.approx(2 * s.recall * s.precision / (s.recall + s.precision))


@given(st.lists(st.sampled_from(list("abcde")), min_size=1, max_size=15), st.integers(1, 3))
def test_identity_is_exactly_one(t, n):
    if len(t) >= n:
        s = rouge_n(t, t, n)
        assert s.recall == s.precision == s.f1 == 1.0
