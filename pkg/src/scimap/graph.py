"""Weighted co-occurrence graph: construction from link aggregates and
two-stage reduction (smallest-component removal, then betweenness pruning
down to the node cap)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from scimap.corpus import EntityRef, split_pair_key
from scimap.index import LinkAggregate

DEFAULT_MAX_NODES = 300


class GraphError(ValueError):
    pass


@dataclass
class NodeData:
    entity: EntityRef
    weight: float = 0.0


@dataclass
class FilterConfig:
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self) -> None:
        if self.max_nodes < 2:
            raise GraphError(f"max_nodes must be >= 2, got {self.max_nodes}")


@dataclass
class NetworkGraph:
    """Undirected weighted graph; edge keys are sorted (u, v) tuples."""

    nodes: dict[str, NodeData] = field(default_factory=dict)
    edges: dict[tuple[str, str], float] = field(default_factory=dict)

    def order(self) -> int:
        return len(self.nodes)

    def adjacency(self) -> dict[str, dict[str, float]]:
        adj: dict[str, dict[str, float]] = {n: {} for n in self.nodes}
        for (u, v), w in self.edges.items():
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def degree(self, node_id: str) -> int:
        return sum(1 for (u, v) in self.edges if node_id in (u, v))

    def subgraph(self, keep: Iterable[str]) -> "NetworkGraph":
        """Induced subgraph; node weights and edge strengths are copied,
        not recomputed."""
        keep = set(keep)
        return NetworkGraph(
            nodes={n: data for n, data in self.nodes.items() if n in keep},
            edges={e: w for e, w in self.edges.items() if e[0] in keep and e[1] in keep},
        )


def build_graph(aggs: list[LinkAggregate], entity_type: str = "topic") -> NetworkGraph:
    """One node per distinct serialized entity, one edge per aggregate with
    strength = doc_count; node weight = sum of incident strengths."""
    g = NetworkGraph()
    for agg in aggs:
        try:
            (id_a, label_a), (id_b, label_b) = split_pair_key(agg.key)
        except ValueError as exc:
            raise GraphError(f"malformed pair key: {agg.key!r}") from exc
        if id_a == id_b and label_a == label_b:
            raise GraphError(f"self-pair key: {agg.key!r}")
        node_a = f"{id_a}###{label_a}"
        node_b = f"{id_b}###{label_b}"
        for node_id, eid, label in ((node_a, id_a, label_a), (node_b, id_b, label_b)):
            if node_id not in g.nodes:
                g.nodes[node_id] = NodeData(entity=EntityRef(entity_type, eid, label))
        edge = (node_a, node_b) if node_a < node_b else (node_b, node_a)
        g.edges[edge] = g.edges.get(edge, 0.0) + float(agg.doc_count)
    for (u, v), w in g.edges.items():
        g.nodes[u].weight += w
        g.nodes[v].weight += w
    return g


def connected_components(g: NetworkGraph) -> list[set[str]]:
    """Components ordered by (size ascending, smallest member id)."""
    adj = g.adjacency()
    seen: set[str] = set()
    components: list[set[str]] = []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nb in adj[node]:
                if nb not in comp:
                    comp.add(nb)
                    queue.append(nb)
        seen |= comp
        components.append(comp)
    components.sort(key=lambda c: (len(c), min(c)))
    return components


def filter_components(g: NetworkGraph, cfg: FilterConfig) -> NetworkGraph:
    """Iteratively drop the smallest component while the node count exceeds
    the cap and more than one component remains."""
    components = connected_components(g)
    total = g.order()
    while total > cfg.max_nodes and len(components) > 1:
        smallest = components.pop(0)
        total -= len(smallest)
    keep = set().union(*components) if components else set()
    if len(keep) == g.order():
        return g
    return g.subgraph(keep)


def betweenness(g: NetworkGraph) -> dict[str, float]:
    """Unnormalized shortest-path betweenness (Brandes), unweighted paths,
    endpoints excluded; each unordered pair counted once."""
    adj = g.adjacency()
    nodes = sorted(g.nodes)
    bc = {n: 0.0 for n in nodes}
    for s in nodes:
        stack: list[str] = []
        preds: dict[str, list[str]] = {n: [] for n in nodes}
        sigma = {n: 0.0 for n in nodes}
        dist = {n: -1 for n in nodes}
        sigma[s] = 1.0
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {n: 0.0 for n in nodes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    return {n: v / 2.0 for n, v in bc.items()}


def filter_betweenness(g: NetworkGraph, cfg: FilterConfig) -> NetworkGraph:
    """Keep the max_nodes highest-betweenness nodes (ties: weight descending,
    then id), take the induced subgraph, drop isolates, keep the largest
    remaining component."""
    if g.order() <= cfg.max_nodes:
        return g
    bc = betweenness(g)
    ranked = sorted(g.nodes, key=lambda n: (-bc[n], -g.nodes[n].weight, n))
    sub = g.subgraph(ranked[: cfg.max_nodes])
    connected = {n for e in sub.edges for n in e}
    sub = sub.subgraph(connected)
    if not sub.nodes:
        return sub
    components = connected_components(sub)
    largest = min(components, key=lambda c: (-len(c), min(c)))
    return sub.subgraph(largest)


def reduce_graph(g: NetworkGraph, cfg: FilterConfig) -> NetworkGraph:
    """The full two-stage reduction."""
    return filter_betweenness(filter_components(g, cfg), cfg)
