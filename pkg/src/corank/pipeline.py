"""End-to-end summarization: text in, summary plus diagnostics out."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

from corank.community import CommunityConfig, Detection, detect
from corank.graphbuild import SimilarityConfig, build_graph
from corank.graphcore import WeightedGraph
from corank.preprocess import SentenceRecord, preprocess_document
from corank.ranker import RankConfig, RankedSelection, Summary, assemble_summary, select_influential

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    similarity: SimilarityConfig = SimilarityConfig()
    community: CommunityConfig = CommunityConfig()
    rank: RankConfig = RankConfig()
    rouge_stem: bool = False
    rouge_stopwords: bool = False

    # flat key -> (section, field)
    _KEYS = {
        "delta_e": ("similarity", "delta_e"),
        "lambda": ("similarity", "lam"),
        "delta_csoan": ("community", "delta_csoan"),
        "alpha_decay": ("community", "alpha_decay"),
        "max_iter": ("community", "max_iterations"),
        "k": ("rank", "k"),
        "word_budget": ("rank", "word_budget"),
        "stem": (None, "rouge_stem"),
        "stopwords": (None, "rouge_stopwords"),
    }

    def updated(self, values: dict[str, Any]) -> "PipelineConfig":
        """Return a copy with flat keys (``delta_e``, ``k``, ...) overridden.

        Setting ``word_budget`` clears ``k`` unless ``k`` is given too, and
        the other way round.
        """
        unknown = set(values) - set(self._KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values = dict(values)
        if "word_budget" in values and values["word_budget"] is not None and "k" not in values:
            values["k"] = None
        if "k" in values and values["k"] is not None and "word_budget" not in values:
            values["word_budget"] = None

        sections: dict[str, dict[str, Any]] = {"similarity": {}, "community": {}, "rank": {}}
        top: dict[str, Any] = {}
        for key, value in values.items():
            section, name = self._KEYS[key]
            (sections[section] if section else top)[name] = value
        return replace(
            self,
            similarity=replace(self.similarity, **sections["similarity"]),
            community=replace(self.community, **sections["community"]),
            rank=replace(self.rank, **sections["rank"]),
            **top,
        )

    def as_flat_dict(self) -> dict[str, Any]:
        out = {}
        for key, (section, name) in self._KEYS.items():
            obj = getattr(self, section) if section else self
            out[key] = getattr(obj, name)
        return out


@dataclass
class SummaryResult:
    records: list[SentenceRecord]
    summary: Summary
    graph: WeightedGraph | None = None
    detection: Detection | None = None
    selection: RankedSelection | None = None
    warnings: list[str] = field(default_factory=list)

    def to_json_dict(self, config: PipelineConfig) -> dict:
        picks = []
        communities = []
        iterations = 0
        converged = True
        if self.selection is not None:
            picks = [
                {"node": p.node, "community": p.community, "weightedDegree": p.weighted_degree}
                for p in self.selection.picks
            ]
        if self.detection is not None:
            communities = [
                {"members": c.sorted_members(), "conductance": c.phi}
                for c in self.detection.communities
            ]
            iterations = self.detection.state.iteration - 1
            converged = self.detection.state.converged
        by_index = {r.index: r.raw for r in self.records}
        return {
            "schemaVersion": SCHEMA_VERSION,
            "summary": self.summary.text,
            "sentences": [{"index": i, "text": by_index[i]} for i in self.summary.indices],
            "picks": picks,
            "communities": communities,
            "iterations": iterations,
            "converged": converged,
            "truncated": self.summary.truncated,
            "short": bool(self.selection and self.selection.short),
            "warnings": self.warnings,
            "config": config.as_flat_dict(),
        }

    def to_json(self, config: PipelineConfig) -> str:
        return json.dumps(self.to_json_dict(config), indent=2, sort_keys=True)


def summarize_text(text: str, config: PipelineConfig = PipelineConfig()) -> SummaryResult:
    records = preprocess_document(text)
    if len(records) < 2:
        summary = Summary(" ".join(r.raw for r in records), [r.index for r in records])
        return SummaryResult(records, summary, warnings=["fewer than 2 sentences; document returned unchanged"])

    g = build_graph(records, config.similarity)
    detection = detect(g, config.community)
    selection = select_influential(g, detection.communities, config.rank)
    summary = assemble_summary(records, selection, config.rank)
    warnings = []
    if not detection.state.converged:
        warnings.append("community detection hit the iteration cap")
    if selection.short:
        warnings.append(f"only {len(selection.picks)} sentences available")
    if config.rank.word_budget is not None and not summary.indices:
        warnings.append("word budget is smaller than the first picked sentence")
    return SummaryResult(records, summary, g, detection, selection, warnings)
