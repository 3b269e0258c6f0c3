"""Undirected weighted graph with a stable 1-based edge numbering.

Edges are referred to by their *map index*: the 1-based position at which
the edge was inserted. Every neighbour-set computation in
:mod:`corank.community` works on map indices rather than node pairs.
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

import numpy as np


class InvalidNodeError(KeyError):
    """Raised when a node id is not part of the graph."""


class UndefinedConductanceError(ValueError):
    """Raised for the empty set or the full node set."""


class WeightedGraph:
    """Immutable undirected graph with positive edge weights.

    Args:
        nodes: node ids. Endpoints of ``edges`` are added automatically, so
            this is only needed for isolated nodes.
        edges: ``(i, j, w)`` triples. Map indices follow iteration order.
    """

    def __init__(self, nodes: Iterable[int] = (), edges: Iterable[tuple[int, int, float]] = ()):
        pairs: list[tuple[int, int]] = []
        weights: list[float] = []
        index: dict[tuple[int, int], int] = {}
        adj: dict[int, dict[int, float]] = {int(v): {} for v in nodes}
        for i, j, w in edges:
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not w > 0:
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {w}")
            key = (i, j) if i < j else (j, i)
            if key in index:
                raise ValueError(f"duplicate edge {key}")
            pairs.append(key)
            weights.append(w)
            index[key] = len(pairs)
            adj.setdefault(i, {})[j] = w
            adj.setdefault(j, {})[i] = w

        self._pairs = tuple(pairs)
        self._index = index
        self._adj = adj
        self._incident = {
            v: frozenset(index[(v, u) if v < u else (u, v)] for u in nbrs)
            for v, nbrs in adj.items()
        }
        self.nodes: frozenset[int] = frozenset(adj)
        self.weights = np.asarray(weights, dtype=float)
        self.weights.setflags(write=False)

    @classmethod
    def from_edge_list(cls, source: str | Path, nodes: Iterable[int] = ()) -> "WeightedGraph":
        """Load ``i j w`` lines. ``#`` starts a comment; blank lines are skipped."""
        text = Path(source).read_text(encoding="utf-8")
        return cls.from_edge_text(text, nodes)

    @classmethod
    def from_edge_text(cls, text: str, nodes: Iterable[int] = ()) -> "WeightedGraph":
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'i j w', got {line!r}")
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
        return cls(nodes, edges)

    def __repr__(self) -> str:
        return f"WeightedGraph(n_nodes={len(self.nodes)}, n_edges={self.n_edges})"

    @property
    def n_edges(self) -> int:
        return len(self._pairs)

    @property
    def edge_ids(self) -> range:
        return range(1, len(self._pairs) + 1)

    def edges(self) -> list[tuple[int, int, float]]:
        """All edges as ``(i, j, w)`` in map-index order."""
        return [(i, j, float(w)) for (i, j), w in zip(self._pairs, self.weights)]

    def endpoints(self, e: int) -> tuple[int, int]:
        if not 1 <= e <= len(self._pairs):
            raise IndexError(f"edge map index {e} outside [1, {len(self._pairs)}]")
        return self._pairs[e - 1]

    def weight(self, e: int) -> float:
        self.endpoints(e)
        return float(self.weights[e - 1])

    def map_index(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no edge between {i} and {j}") from None

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise InvalidNodeError(f"node {v} not in graph")

    def neighbors(self, v: int) -> dict[int, float]:
        self._check(v)
        return dict(self._adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def incident_edges(self, v: int) -> frozenset[int]:
        """Map indices of every edge touching ``v``."""
        self._check(v)
        return self._incident[v]

    def weighted_degree_in(self, v: int, community: Iterable[int]) -> float:
        """Sum of weights from ``v`` to the other members of ``community``."""
        members = community if isinstance(community, (set, frozenset)) else set(community)
        if v not in members:
            raise ValueError(f"node {v} is not a member of the community")
        self._check(v)
        return float(sum(w for u, w in self._adj[v].items() if u in members))

    def total_weight(self) -> float:
        return float(self.weights.sum())

    def conductance(self, members: Iterable[int], *, weighted: bool = False) -> float:
        """Cut size over the smaller side's volume.

        By default every edge counts 1 regardless of weight. A side with
        zero volume has no cut either and gives 0.0.
        """
        s = frozenset(members)
        if not s:
            raise UndefinedConductanceError("conductance of the empty set")
        unknown = s - self.nodes
        if unknown:
            raise InvalidNodeError(f"nodes {sorted(unknown)} not in graph")
        if s == self.nodes:
            raise UndefinedConductanceError("conductance of the full node set")

        cut = 0.0
        vol = 0.0
        for v in s:
            for u, w in self._adj[v].items():
                a = w if weighted else 1.0
                vol += a
                if u not in s:
                    cut += a
        total = 2.0 * (self.total_weight() if weighted else self.n_edges)
        denom = min(vol, total - vol)
        if denom == 0:
            return 0.0
        return cut / denom


def example_graph() -> WeightedGraph:
    """The bundled ten-node, eighteen-edge demonstration network."""
    from importlib.resources import files

    text = files("corank.data").joinpath("example_graph.txt").read_text(encoding="utf-8")
    return WeightedGraph.from_edge_text(text)
