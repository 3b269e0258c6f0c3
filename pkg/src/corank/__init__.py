"""Extractive summarization from overlapping sentence communities."""

from corank.community import (
    Community,
    CommunityConfig,
    NeighborState,
    compute_foan,
    compute_soan,
    csoan_step,
    detect,
    detect_communities,
    edge_vector,
    iterate_to_stability,
    link_node_set,
    merge_lns,
    weighted_jaccard,
)
from corank.graphbuild import SimilarityConfig, build_graph
from corank.graphcore import WeightedGraph, example_graph
from corank.pipeline import PipelineConfig, summarize_text
from corank.preprocess import SentenceRecord, preprocess_document
from corank.ranker import RankConfig, assemble_summary, select_influential
from corank.rouge import RougeScore, rouge_n, rouge_text

__version__ = "0.1.0"
