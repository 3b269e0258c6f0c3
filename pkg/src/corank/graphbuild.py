"""Sentence-similarity graph: TF-IDF cosine mixed with stem-set Jaccard."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from corank.graphcore import WeightedGraph
from corank.preprocess import SentenceRecord


@dataclass(frozen=True)
class SimilarityConfig:
    """``delta_e`` is the minimum similarity for an edge; ``lam`` weights
    the cosine term against the Jaccard term."""

    delta_e: float = 0.1
    lam: float = 0.5

    def __post_init__(self):
        if not 0 <= self.delta_e <= 1:
            raise ValueError(f"delta_e must be in [0, 1], got {self.delta_e}")
        if not 0 <= self.lam <= 1:
            raise ValueError(f"lam must be in [0, 1], got {self.lam}")


def tfidf_vectors(records: Sequence[SentenceRecord]) -> list[dict[str, float]]:
    """Per-sentence ``tf * ln(1 + n / df)`` with sentences as the documents."""
    if not records:
        raise ValueError("no sentences")
    n = len(records)
    df = Counter(t for r in records for t in set(r.tokens))
    return [
        {t: c * math.log(1 + n / df[t]) for t, c in Counter(r.tokens).items()}
        for r in records
    ]


def statistical_similarity(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    dot = sum(v * b[k] for k, v in a.items() if k in b)
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    if na == 0 or nb == 0:
        return 0.0
    return min(1.0, max(0.0, dot / (na * nb)))


def semantic_similarity(a: set[str] | frozenset[str], b: set[str] | frozenset[str]) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def similarity_matrix(records: Sequence[SentenceRecord], config: SimilarityConfig = SimilarityConfig()) -> np.ndarray:
    """Dense pairwise mixed similarity; the diagonal is zeroed."""
    n = len(records)
    if n == 0:
        return np.zeros((0, 0))
    vecs = tfidf_vectors(records)
    vocab = {t: k for k, t in enumerate(sorted({t for r in records for t in r.tokens}))}
    tf = np.zeros((n, len(vocab)))
    for i, v in enumerate(vecs):
        for t, w in v.items():
            tf[i, vocab[t]] = w

    norms = np.linalg.norm(tf, axis=1)
    unit = np.divide(tf, norms[:, None], out=np.zeros_like(tf), where=norms[:, None] > 0)
    cos = np.clip(unit @ unit.T, 0.0, 1.0)

    present = (tf > 0).astype(float)
    inter = present @ present.T
    sizes = present.sum(axis=1)
    union = sizes[:, None] + sizes[None, :] - inter
    jac = np.divide(inter, union, out=np.zeros_like(inter), where=union > 0)

    sim = config.lam * cos + (1 - config.lam) * jac
    np.fill_diagonal(sim, 0.0)
    return np.clip(sim, 0.0, 1.0)


def build_graph(records: Sequence[SentenceRecord], config: SimilarityConfig = SimilarityConfig()) -> WeightedGraph:
    """Nodes are sentence indices; pairs with similarity >= ``delta_e`` (and > 0)
    become edges, numbered in ``(i, j)`` lexicographic order."""
    sim = similarity_matrix(records, config)
    n = len(records)
    iu, ju = np.triu_indices(n, k=1)
    vals = sim[iu, ju]
    keep = (vals >= config.delta_e) & (vals > 0)
    edges = [(records[i].index, records[j].index, w) for i, j, w in zip(iu[keep], ju[keep], vals[keep])]
    return WeightedGraph((r.index for r in records), edges)
