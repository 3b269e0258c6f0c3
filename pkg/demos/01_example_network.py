"""
Walking through the ten-node example network
============================================

Every stage of community detection and ranking on the bundled graph,
printed step by step.
"""

from corank import CommunityConfig, RankConfig, example_graph, select_influential
from corank.community import (
    compute_foan,
    csoan_step,
    detect,
    format_sets,
    iterate_to_stability,
    link_node_set,
)

g = example_graph()
print(f"{len(g.nodes)} nodes, {g.n_edges} edges")

# Edges are numbered 1..18 in (i, j) order. Each one starts with the edges
# that share an endpoint with it.
foan = compute_foan(g)
print("\nfirst-order neighbours")
print(format_sets(g, foan.sets))

# One refinement round at the starting threshold of 0.5.
cfg = CommunityConfig()
step1 = csoan_step(g, foan, cfg)
print(f"\nafter one round (threshold {cfg.threshold(1)})")
print(format_sets(g, step1.sets))

# Keep going until a round leaves every set unchanged.
stable = iterate_to_stability(g, cfg)
print(f"\nstable after {stable.iteration - 1} rounds")
for e in g.edge_ids:
    nodes = link_node_set(g, stable[e])
    phi = "n/a" if nodes == g.nodes else f"{g.conductance(nodes):.3f}"
    print(g.endpoints(e), sorted(nodes), phi)

# Node sets are merged while the union has lower conductance than both parts.
communities = detect(g, cfg).communities
print("\ncommunities")
for c in communities:
    print(f"  {c.sorted_members()}  conductance {c.phi:.3f}")

# Largest community first, best-connected member within it.
sel = select_influential(g, communities, RankConfig(k=5))
print("\npicks:", sel.ordered_nodes)
