"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque

from scimap.communities import Partition, modularity
from scimap.corpus import EntityRef, Publication, compute_pairs, pair_key
from scimap.graph import NetworkGraph, NodeData
from scimap.index import LinkAggregate


def make_pub(pub_id, topics, year=2020, title="", abstract=None, citations=None,
             author_count=0):
    """topics: list of (id, label) tuples."""
    refs = [EntityRef("topic", tid, label) for tid, label in topics]
    return Publication(
        pub_id=pub_id,
        year=year,
        title=title,
        abstract=abstract,
        entities={"topic": refs} if refs else {},
        citations_by_year=citations or {},
        author_count=author_count,
    )


def make_graph(edges, nodes=()):
    """edges: (u, v, strength) triples; extra isolated nodes allowed."""
    g = NetworkGraph()
    for n in nodes:
        g.nodes[n] = NodeData(entity=EntityRef("topic", n, n))
    for u, v, w in edges:
        for n in (u, v):
            if n not in g.nodes:
                g.nodes[n] = NodeData(entity=EntityRef("topic", n, n))
        edge = (u, v) if u < v else (v, u)
        g.edges[edge] = g.edges.get(edge, 0.0) + float(w)
    for (u, v), w in g.edges.items():
        g.nodes[u].weight += w
        g.nodes[v].weight += w
    return g


def random_graph(rng: random.Random, max_nodes=12, connected=False, p=None):
    """Random simple graph with unit-ish integer strengths."""
    n = rng.randint(2, max_nodes)
    names = [f"n{i:02d}" for i in range(n)]
    if p is None:
        p = rng.uniform(0.2, 0.7)
    edges = [
        (u, v, rng.randint(1, 5))
        for u, v in itertools.combinations(names, 2)
        if rng.random() < p
    ]
    if connected:
        # chain any disconnected pieces together
        g = make_graph(edges, nodes=names)
        comps = _components(g)
        for a, b in zip(comps, comps[1:]):
            edges.append((min(a), min(b), 1))
    return make_graph(edges, nodes=names)


def _components(g: NetworkGraph):
    adj = g.adjacency()
    seen, comps = set(), []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            for nb in adj[queue.popleft()]:
                if nb not in comp:
                    comp.add(nb)
                    queue.append(nb)
        seen |= comp
        comps.append(comp)
    return comps


def brute_force_aggregate(pubs, matched, entity_type, top_k):
    """Independent recount: recompute every matched publication's pairs and
    tally, sorted by (-count, key), truncated."""
    counts = Counter()
    for p in pubs:
        if p.pub_id in matched:
            for key in compute_pairs(p, entity_type):
                counts[key] += 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [LinkAggregate(key=k, doc_count=c) for k, c in ordered[:top_k]]


def enumerate_betweenness(g: NetworkGraph):
    """Path-enumeration oracle: list every shortest path for every unordered
    pair and count interior node occurrences, fractionally."""
    adj = g.adjacency()
    nodes = sorted(g.nodes)
    bc = {n: 0.0 for n in nodes}
    for s, t in itertools.combinations(nodes, 2):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        if t not in dist:
            continue
        paths = []

        def walk(node, acc):
            if node == s:
                paths.append(acc + [node])
                return
            for nb in adj[node]:
                if dist.get(nb) == dist[node] - 1:
                    walk(nb, acc + [node])

        walk(t, [])
        for path in paths:
            for interior in path[1:-1]:
                bc[interior] += 1.0 / len(paths)
    return bc


def set_partitions(items):
    """All set partitions of a list (Bell-number enumeration)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1 :]
        yield [[first]] + partial


def brute_force_best_modularity(g: NetworkGraph):
    """Maximum modularity over every partition of the graph's nodes."""
    nodes = sorted(g.nodes)
    best = float("-inf")
    for blocks in set_partitions(nodes):
        assignment = {}
        for cid, block in enumerate(blocks, start=1):
            for n in block:
                assignment[n] = cid
        q = modularity(g, Partition(assignment=assignment, cluster_count=len(blocks)))
        best = max(best, q)
    return best


# ---------------------------------------------------------------------------
# fixture corpus reproducing the published "carbon sequestration" listing
# ---------------------------------------------------------------------------

CARBON_LISTING = [
    (("Q15305550", "carbon sequestration"), ("Q7942", "climate change"), 17),
    (("Q15305550", "carbon sequestration"), ("Q623", "carbon"), 14),
    (("Q15305550", "Carbon sequestration"), ("Q7942", "Climate change"), 13),
    (("Q15305550", "Carbon sequestration"), ("Q898653", "Climate change mitigation"), 10),
    (("Q397350", "agroforestry"), ("Q8486", "coffee"), 10),
    (("Q15305550", "Carbon sequestration"), ("Q1997", "CO2"), 9),
    (("Q623", "carbon"), ("Q627", "nitrogen"), 9),
    (("Q15305550", "Carbon sequestration"), ("Q623", "carbon"), 7),
]

CARBON_EXPECTED_KEYS = [
    (pair_key(EntityRef("topic", *a), EntityRef("topic", *b)), count)
    for a, b, count in CARBON_LISTING
]


def carbon_corpus():
    """One publication per supporting document; every publication matches the
    query 'carbon sequestration' via its title and carries exactly one pair."""
    pubs = []
    i = 0
    for a, b, count in CARBON_LISTING:
        for _ in range(count):
            i += 1
            pubs.append(
                make_pub(
                    f"c{i:03d}",
                    [a, b],
                    title="Carbon sequestration field study",
                    citations={2024: 1},
                )
            )
    return pubs
