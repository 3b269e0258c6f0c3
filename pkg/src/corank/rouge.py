"""ROUGE-N recall, precision and F1."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from corank.preprocess import porter_stem, remove_stopwords, tokenize


@dataclass(frozen=True)
class RougeScore:
    n: int
    recall: float
    precision: float
    f1: float

    def as_dict(self) -> dict:
        return {"n": self.n, "recall": self.recall, "precision": self.precision, "f1": self.f1}


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    cand = ngrams(candidate, n)
    ref = ngrams(reference, n)
    overlap = sum((cand & ref).values())
    n_ref = sum(ref.values())
    n_cand = sum(cand.values())
    r = overlap / n_ref if n_ref else 0.0
    p = overlap / n_cand if n_cand else 0.0
    f = 2 * r * p / (r + p) if r + p > 0 else 0.0
    return RougeScore(n, r, p, f)


def rouge_tokens(text: str, *, stem: bool = False, stopwords: bool = False) -> list[str]:
    """Lowercase alphanumeric runs; ``stopwords=True`` removes them."""
    tokens = tokenize(text)
    if stopwords:
        tokens = remove_stopwords(tokens)
    if stem:
        tokens = [porter_stem(t) for t in tokens]
    return tokens


def rouge_text(candidate: str, reference: str, n: int = 1, *, stem: bool = False, stopwords: bool = False) -> RougeScore:
    return rouge_n(
        rouge_tokens(candidate, stem=stem, stopwords=stopwords),
        rouge_tokens(reference, stem=stem, stopwords=stopwords),
        n,
    )
