"""Pick sentences from overlapping communities by weighted degree.

Each round takes the community with the most remaining members and
selects its member with the largest weighted degree inside that community.
The chosen node is then removed from every community.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from corank.graphcore import WeightedGraph
from corank.preprocess import SentenceRecord


@dataclass(frozen=True)
class RankConfig:
    k: int | None = 3
    word_budget: int | None = None

    def __post_init__(self):
        if (self.k is None) == (self.word_budget is None):
            raise ValueError("set exactly one of k and word_budget")
        value = self.k if self.k is not None else self.word_budget
        if value < 1:
            raise ValueError(f"k / word_budget must be >= 1, got {value}")


@dataclass(frozen=True)
class Pick:
    node: int
    community: int  # position in the input community list
    weighted_degree: float


@dataclass
class RankedSelection:
    picks: list[Pick] = field(default_factory=list)
    short: bool = False  # fewer picks than requested

    @property
    def ordered_nodes(self) -> list[int]:
        return [p.node for p in self.picks]


@dataclass
class Summary:
    text: str
    indices: list[int]
    truncated: bool = False  # the word budget dropped at least one pick


def _internal_degree(g: WeightedGraph, members: set[int]) -> float:
    return sum(g.weighted_degree_in(v, members) for v in members)


def select_influential(
    g: WeightedGraph,
    communities: Sequence[Iterable[int]],
    config: RankConfig = RankConfig(),
) -> RankedSelection:
    """Accepts :class:`~corank.community.Community` objects or plain node sets."""
    if not communities:
        raise ValueError("no communities to rank")
    remaining = [set(getattr(c, "members", c)) for c in communities]
    available = set().union(*remaining)
    wanted = config.k if config.k is not None else len(available)

    sel = RankedSelection()
    while len(sel.picks) < wanted:
        live = [(pos, c) for pos, c in enumerate(remaining) if c]
        if not live:
            break
        pos, members = max(live, key=lambda pc: (len(pc[1]), _internal_degree(g, pc[1]), -pc[0]))
        node, deg = max(
            ((v, g.weighted_degree_in(v, members)) for v in members),
            key=lambda vd: (vd[1], -vd[0]),
        )
        sel.picks.append(Pick(node, pos, deg))
        for c in remaining:
            c.discard(node)

    sel.short = config.k is not None and len(sel.picks) < config.k
    return sel


def _words(text: str) -> int:
    return len(text.split())


def assemble_summary(
    records: Sequence[SentenceRecord],
    selection: RankedSelection,
    config: RankConfig = RankConfig(),
) -> Summary:
    """Join the picked sentences in document order.

    With a word budget, picks are taken in pick order until the next one
    would overflow the budget.
    """
    by_index = {r.index: r for r in records}
    chosen = []
    used = 0
    truncated = False
    for node in selection.ordered_nodes:
        if node not in by_index:
            raise ValueError(f"pick {node} is not a sentence index")
        if config.word_budget is not None:
            n = _words(by_index[node].raw)
            if used + n > config.word_budget:
                truncated = True
                break
            used += n
        chosen.append(node)
    chosen.sort()
    return Summary(" ".join(by_index[i].raw for i in chosen), chosen, truncated)
