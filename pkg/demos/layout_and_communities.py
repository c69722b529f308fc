"""Small-graph tour of the layout and community modules.

Builds two triangles joined by a bridge, runs Louvain and the force layout,
and prints enough numbers to eyeball that both behave: the triangles should
land in separate communities and sit farther from each other than their own
members do.

Run:  python3 demos/layout_and_communities.py
"""

import itertools
import math

from scimap.communities import louvain, modularity
from scimap.corpus import EntityRef
from scimap.graph import NetworkGraph, NodeData, betweenness
from scimap.layout import infer_settings, run_layout

g = NetworkGraph()
edges = (
    list(itertools.combinations(["a1", "a2", "a3"], 2))
    + list(itertools.combinations(["b1", "b2", "b3"], 2))
    + [("a1", "b1")]
)
for u, v in edges:
    for n in (u, v):
        g.nodes.setdefault(n, NodeData(entity=EntityRef("topic", n, n)))
    g.edges[(u, v) if u < v else (v, u)] = 1.0
for (u, v), w in g.edges.items():
    g.nodes[u].weight += w
    g.nodes[v].weight += w

partition = louvain(g, seed=0)
print("communities:", partition.members())
print(f"modularity: {modularity(g, partition):.4f}")

bc = betweenness(g)
print("betweenness (bridge endpoints should dominate):")
for node in sorted(bc, key=bc.get, reverse=True):
    print(f"  {node}: {bc[node]:.1f}")

cfg = infer_settings(g.order(), seed=3)
print(f"inferred settings: slow_down={cfg.slow_down:.3f}, "
      f"barnes_hut={cfg.barnes_hut}")
pos = run_layout(g, cfg).positions

dist = lambda u, v: math.dist(pos[u], pos[v])
intra = (dist("a1", "a2") + dist("a2", "a3") + dist("b1", "b2")) / 3
inter = dist("a2", "b2")
print(f"mean intra-triangle distance: {intra:.2f}")
print(f"a2 to b2 distance:            {inter:.2f}")
print("separated" if inter > intra else "not separated (try another seed)")
