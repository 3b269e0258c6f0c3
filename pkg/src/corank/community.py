"""Overlapping community detection on the edges of a weighted graph.

Every edge starts with its first-order neighbours (the edges sharing an
endpoint with it, itself included). Each round widens that set to the
neighbours of neighbours and keeps only the edges whose weight vectors are
similar enough under weighted Jaccard. The threshold decays each round.
Once the whole mapping stops changing, each edge's neighbour set is turned
into the set of nodes it covers. Those node sets are then merged while the
merge lowers conductance.
"""

from __future__ import annotations

import bisect
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from corank.graphcore import WeightedGraph

log = logging.getLogger(__name__)

NeighborSets = dict[int, frozenset[int]]


@dataclass(frozen=True)
class CommunityConfig:
    delta_csoan: float = 0.5
    alpha_decay: float = 0.8
    max_iterations: int | None = None  # None means |E|

    def __post_init__(self):
        if not 0 < self.delta_csoan <= 1:
            raise ValueError(f"delta_csoan must be in (0, 1], got {self.delta_csoan}")
        if not 0 < self.alpha_decay <= 1:
            raise ValueError(f"alpha_decay must be in (0, 1], got {self.alpha_decay}")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")

    def threshold(self, t: int) -> float:
        """Similarity cut-off used by the step that starts from iteration ``t``."""
        return self.delta_csoan * self.alpha_decay ** (t - 1)


@dataclass(frozen=True)
class NeighborState:
    """Neighbour set of every edge at iteration ``iteration``.

    ``converged`` is False only on the state returned by
    :func:`iterate_to_stability` when it hit the iteration cap.
    """

    sets: NeighborSets
    iteration: int = 1
    converged: bool = True

    def __getitem__(self, e: int) -> frozenset[int]:
        return self.sets[e]


@dataclass(frozen=True)
class Community:
    members: frozenset[int]
    phi: float

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


@dataclass
class Detection:
    """Everything :func:`detect` produced, kept for diagnostics."""

    communities: list[Community]
    state: NeighborState
    history: list[NeighborState] = field(default_factory=list)
    link_node_sets: dict[int, frozenset[int]] = field(default_factory=dict)


def compute_foan(g: WeightedGraph) -> NeighborState:
    sets = {}
    for e in g.edge_ids:
        i, j = g.endpoints(e)
        sets[e] = g.incident_edges(i) | g.incident_edges(j)
    return NeighborState(sets, iteration=1)


def compute_soan(state: NeighborState, e: int) -> frozenset[int]:
    out: set[int] = set()
    for f in state[e]:
        out |= state[f]
    return frozenset(out)


def edge_vector(g: WeightedGraph, neighbor_set: Iterable[int]) -> dict[int, float]:
    return {f: g.weight(f) for f in neighbor_set}


def weighted_jaccard(x: Mapping[int, float], y: Mapping[int, float]) -> float:
    """Sum of component-wise minima over sum of maxima; 0 for two empty vectors."""
    num = 0.0
    den = 0.0
    for k in x.keys() | y.keys():
        a = x.get(k, 0.0)
        b = y.get(k, 0.0)
        num += min(a, b)
        den += max(a, b)
    return num / den if den > 0 else 0.0


def _membership_matrix(sets: NeighborSets, m: int) -> sparse.csr_matrix:
    rows, cols = [], []
    for e, members in sets.items():
        rows.extend([e - 1] * len(members))
        cols.extend(f - 1 for f in members)
    data = np.ones(len(rows))
    return sparse.csr_matrix((data, (rows, cols)), shape=(m, m))


def csoan_step(g: WeightedGraph, state: NeighborState, config: CommunityConfig) -> NeighborState:
    """One refinement round: keep second-order neighbours that pass the threshold.

    Each edge vector carries the graph weight of every edge in the current
    neighbour set, so for two vectors the sum of minima is the total weight
    of the shared members and the sum of maxima is the rest of the union.
    Both come out of one sparse product.
    """
    m = g.n_edges
    delta = config.threshold(state.iteration)
    n = _membership_matrix(state.sets, m)
    w = g.weights

    second = (n @ n).astype(bool)
    shared = (n @ sparse.diags(w) @ n.T).multiply(second).tocoo()
    mass = n @ w

    union = mass[shared.row] + mass[shared.col] - shared.data
    with np.errstate(divide="ignore", invalid="ignore"):
        sim = np.where(union > 0, shared.data / union, 0.0)
    keep = sim >= delta

    new: dict[int, set[int]] = {e: {e} for e in g.edge_ids}
    for r, c in zip(shared.row[keep], shared.col[keep]):
        new[int(r) + 1].add(int(c) + 1)
    return NeighborState({e: frozenset(s) for e, s in new.items()}, iteration=state.iteration + 1)


def iterate_to_stability(
    g: WeightedGraph,
    config: CommunityConfig = CommunityConfig(),
    *,
    history: list[NeighborState] | None = None,
) -> NeighborState:
    """Repeat :func:`csoan_step` until no edge's neighbour set changes.

    The returned state's ``iteration - 1`` is the number of steps taken.
    If ``history`` is given, every state from the first-order one onwards is
    appended to it.
    """
    cap = config.max_iterations if config.max_iterations is not None else max(g.n_edges, 1)
    state = compute_foan(g)
    if history is not None:
        history.append(state)
    for _ in range(cap):
        nxt = csoan_step(g, state, config)
        if history is not None:
            history.append(nxt)
        if nxt.sets == state.sets:
            return nxt
        state = nxt
    log.warning("neighbour sets did not stabilise within %d iterations", cap)
    return NeighborState(state.sets, state.iteration, converged=False)


def link_node_set(g: WeightedGraph, csoan: Iterable[int]) -> frozenset[int]:
    nodes: set[int] = set()
    for e in csoan:
        nodes.update(g.endpoints(e))
    return frozenset(nodes)


def _order_key(s: frozenset[int], phi: Mapping[frozenset[int], float]):
    return (phi[s], sorted(s))


class _UnionScorer:
    """Batch conductance of ``a | b`` for one mask ``a`` against many masks.

    Uses unweighted adjacency. Edge and volume counts are small integers, so
    float32 products are exact and the final division matches
    :meth:`WeightedGraph.conductance` bit for bit.
    """

    def __init__(self, g: WeightedGraph):
        self.order = sorted(g.nodes)
        self.pos = {v: k for k, v in enumerate(self.order)}
        n = len(self.order)
        adj = np.zeros((n, n), dtype=np.float32)
        for i, j, _ in g.edges():
            adj[self.pos[i], self.pos[j]] = adj[self.pos[j], self.pos[i]] = 1.0
        self.adj = adj
        self.deg = adj.sum(axis=1)
        self.total = 2.0 * g.n_edges

    def mask(self, s: Iterable[int]) -> np.ndarray:
        m = np.zeros(len(self.order), dtype=bool)
        m[[self.pos[v] for v in s]] = True
        return m

    def union_phi(self, a: np.ndarray, others: np.ndarray) -> np.ndarray:
        """Conductance of each union; ``inf`` where the union is every node."""
        u = (others | a).astype(np.float32)
        vol = (u @ self.deg).astype(float)
        inner = ((u @ self.adj) * u).sum(axis=1, dtype=float)
        cut = vol - inner
        denom = np.minimum(vol, self.total - vol)
        with np.errstate(divide="ignore", invalid="ignore"):
            phi = np.where(denom > 0, cut / denom, 0.0)
        phi[u.all(axis=1)] = np.inf
        return phi


def merge_lns(g: WeightedGraph, lns_list: Iterable[Iterable[int]]) -> list[Community]:
    """Union node sets pairwise while the union beats both parts on conductance.

    Each round merges the first qualifying pair when the working sets are
    sorted by (conductance, sorted members), then re-sorts. Whether a pair
    qualifies depends only on the two sets, so the qualification matrix is
    filled once and only the new union is scored after each merge.
    Sets covering every node have no conductance and are dropped.
    """
    work: dict[frozenset[int], None] = {}
    for s in lns_list:
        s = frozenset(s)
        if not s:
            raise ValueError("empty link node set")
        if s == g.nodes:
            log.warning("dropping node set %s: it spans the whole graph", sorted(s))
            continue
        work[s] = None
    sets = list(work)
    if len(sets) < 2:
        return [Community(s, g.conductance(s)) for s in sets]

    k = len(sets)
    cap = 2 * k  # every merge retires two slots and fills at most one
    scorer = _UnionScorer(g)
    masks = np.zeros((cap, len(scorer.order)), dtype=bool)
    phi = np.zeros(cap)
    alive = np.zeros(cap, dtype=bool)
    qual = np.zeros((cap, cap), dtype=bool)
    partners = np.zeros(cap, dtype=np.intp)  # row sums of qual
    members: list[frozenset[int] | None] = [None] * cap
    slot_of: dict[frozenset[int], int] = {}
    order: list[tuple[float, tuple[int, ...], int]] = []

    def add(s: frozenset[int], p: float) -> int:
        slot = next_slot[0]
        next_slot[0] += 1
        members[slot] = s
        masks[slot] = scorer.mask(s)
        phi[slot] = p
        alive[slot] = True
        slot_of[s] = slot
        bisect.insort(order, (p, tuple(sorted(s)), slot))
        return slot

    def score(slot: int, others: np.ndarray) -> None:
        if others.size == 0:
            return
        union_phi = scorer.union_phi(masks[slot], masks[others])
        q = union_phi < np.minimum(phi[slot], phi[others])
        qual[slot, others] = q
        qual[others, slot] = q
        partners[others] += q
        partners[slot] += q.sum()

    next_slot = [0]
    for s in sets:
        add(s, g.conductance(s))
    for slot in range(k - 1):
        score(slot, np.arange(slot + 1, k))

    while True:
        slots = np.fromiter((o[2] for o in order), dtype=np.intp, count=len(order))
        has_partner = partners[slots] > 0
        if not has_partner.any():
            break
        first = int(np.argmax(has_partner))
        a = int(slots[first])
        # partners of the first set with a partner all sit later in the order
        later = slots[first + 1:]
        b = int(later[np.argmax(qual[a, later])])

        u = members[a] | members[b]
        for gone in (a, b):
            alive[gone] = False
            del slot_of[members[gone]]
            order.remove((phi[gone], tuple(sorted(members[gone])), gone))
        partners -= qual[:, a]
        partners -= qual[:, b]
        partners[[a, b]] = 0
        qual[[a, b], :] = False
        qual[:, [a, b]] = False
        if u not in slot_of:
            new = add(u, g.conductance(u))
            others = np.flatnonzero(alive)
            score(new, others[others != new])

    return [Community(members[slot], p) for p, _, slot in order]


def detect(g: WeightedGraph, config: CommunityConfig = CommunityConfig()) -> Detection:
    """Full pipeline with intermediate states kept."""
    if g.n_edges == 0:
        singles = [Community(frozenset({v}), _safe_conductance(g, {v})) for v in sorted(g.nodes)]
        empty = NeighborState({}, iteration=1)
        return Detection(singles, empty, [empty], {})

    history: list[NeighborState] = []
    state = iterate_to_stability(g, config, history=history)
    lns = {e: link_node_set(g, state[e]) for e in g.edge_ids}

    spanning = [s for s in set(lns.values()) if s == g.nodes]
    communities = merge_lns(g, (s for s in lns.values() if s != g.nodes))
    # A set covering the whole graph has no boundary; report it with phi 0.
    communities = [Community(s, 0.0) for s in spanning] + communities

    covered = set().union(*(c.members for c in communities))
    for v in sorted(g.nodes - covered):
        communities.append(Community(frozenset({v}), _safe_conductance(g, {v})))
    return Detection(communities, state, history, lns)


def detect_communities(g: WeightedGraph, config: CommunityConfig = CommunityConfig()) -> list[Community]:
    return detect(g, config).communities


def _safe_conductance(g: WeightedGraph, s) -> float:
    s = frozenset(s)
    return 0.0 if s == g.nodes else g.conductance(s)


def trace_dump(detection: Detection, g: WeightedGraph) -> dict:
    """JSON-ready per-iteration neighbour sets keyed by map index."""

    def sets_to_json(state: NeighborState) -> dict[str, list[int]]:
        return {str(e): sorted(state[e]) for e in sorted(state.sets)}

    return {
        "edges": {str(e): list(g.endpoints(e)) for e in g.edge_ids},
        "iterations": [
            {"t": st.iteration, "neighbors": sets_to_json(st)} for st in detection.history
        ],
        "converged": detection.state.converged,
        "linkNodeSets": {
            str(e): {"nodes": sorted(s), "conductance": _safe_conductance(g, s)}
            for e, s in sorted(detection.link_node_sets.items())
        },
        "communities": [
            {"members": c.sorted_members(), "conductance": c.phi} for c in detection.communities
        ],
    }


def format_sets(g: WeightedGraph, sets: Mapping[int, Iterable[int]]) -> str:
    """One ``(i, j) {a, b, ...}`` line per edge, ordered by map index."""
    lines = []
    for e in sorted(sets):
        i, j = g.endpoints(e)
        body = ", ".join(str(f) for f in sorted(sets[e]))
        lines.append(f"({i}, {j}) {{{body}}}")
    return "\n".join(lines)

