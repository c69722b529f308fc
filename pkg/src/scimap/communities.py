"""Louvain community detection and weighted modularity on the filtered
co-occurrence graph."""

from __future__ import annotations

import random
from dataclasses import dataclass

from scimap.graph import NetworkGraph


class CommunityError(ValueError):
    pass


@dataclass
class Partition:
    """Total assignment of graph nodes to 1-based contiguous cluster ids,
    numbered by decreasing cluster size (ties: smallest member id)."""

    assignment: dict[str, int]
    cluster_count: int

    def members(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {c: [] for c in range(1, self.cluster_count + 1)}
        for node in sorted(self.assignment):
            out[self.assignment[node]].append(node)
        return out


def modularity(g: NetworkGraph, p: Partition, resolution: float = 1.0) -> float:
    """Weighted Newman modularity of a partition."""
    two_m = 2.0 * sum(g.edges.values())
    if two_m == 0.0:
        raise CommunityError("graph has zero total edge weight")
    if set(p.assignment) != set(g.nodes):
        raise CommunityError("partition does not cover the graph")
    internal: dict[int, float] = {}
    total: dict[int, float] = {}
    for (u, v), w in g.edges.items():
        cu, cv = p.assignment[u], p.assignment[v]
        total[cu] = total.get(cu, 0.0) + w
        total[cv] = total.get(cv, 0.0) + w
        if cu == cv:
            internal[cu] = internal.get(cu, 0.0) + w
    q = 0.0
    for c in total:
        q += 2.0 * internal.get(c, 0.0) / two_m - resolution * (total[c] / two_m) ** 2
    return q


def _one_level(
    adj: list[dict[int, float]],
    loops: list[float],
    two_m: float,
    resolution: float,
    rng: random.Random,
    init: list[int] | None = None,
) -> tuple[list[int], bool]:
    """Local-move phase on one aggregation level. Nodes are visited in a
    seeded shuffle of their canonical order."""
    n = len(adj)
    community = list(range(n)) if init is None else list(init)
    # weighted degree; a self-loop contributes twice
    k = [2.0 * loops[i] + sum(adj[i].values()) for i in range(n)]
    tot = [0.0] * (max(community) + 1)
    for i in range(n):
        tot[community[i]] += k[i]
    order = list(range(n))
    rng.shuffle(order)
    improved = False
    moved = True
    while moved:
        moved = False
        for node in order:
            current = community[node]
            # weights from node to each neighboring community
            links: dict[int, float] = {}
            for nb, w in adj[node].items():
                if nb != node:
                    links[community[nb]] = links.get(community[nb], 0.0) + w
            tot[current] -= k[node]
            community[node] = -1

            def score(c: int) -> float:
                return links.get(c, 0.0) - resolution * tot[c] * k[node] / two_m

            # stay unless a move has strictly positive gain; equal positive
            # gains resolve to the lowest community id (ascending scan)
            best_c = current
            best_score = score(current)
            for c in sorted(links):
                if c != current and score(c) > best_score + 1e-12:
                    best_c, best_score = c, score(c)
            community[node] = best_c
            tot[best_c] += k[node]
            if best_c != current:
                moved = True
                improved = True
    return community, improved


def louvain(
    g: NetworkGraph, resolution: float = 1.0, seed: int = 0, restarts: int = 10
) -> Partition:
    """Louvain partition: seeded local moves maximizing modularity gain,
    then community aggregation, repeated until no further improvement.

    The node-visit order matters, so the algorithm restarts with seeds
    derived from `seed` and keeps the highest-modularity result (first one
    wins ties). Deterministic for a fixed seed.
    """
    best: Partition | None = None
    best_q = float("-inf")
    for i in range(max(restarts, 1)):
        p = _louvain_once(g, resolution, seed=seed * 1000003 + i)
        q = modularity(g, p, resolution)
        if q > best_q + 1e-12:
            best, best_q = p, q
    assert best is not None
    return best


def _louvain_once(g: NetworkGraph, resolution: float, seed: int) -> Partition:
    if g.order() == 0:
        raise CommunityError("graph is empty")
    two_m = 2.0 * sum(g.edges.values())
    if two_m == 0.0:
        raise CommunityError("graph has zero total edge weight")

    node_ids = sorted(g.nodes)
    idx = {node: i for i, node in enumerate(node_ids)}
    adj: list[dict[int, float]] = [{} for _ in node_ids]
    for (u, v), w in g.edges.items():
        adj[idx[u]][idx[v]] = adj[idx[u]].get(idx[v], 0.0) + w
        adj[idx[v]][idx[u]] = adj[idx[v]].get(idx[u], 0.0) + w
    loops = [0.0] * len(node_ids)

    rng = random.Random(seed)
    orig_adj = [dict(neighbors) for neighbors in adj]
    # membership of each original node in the current super-node graph
    membership = list(range(len(node_ids)))
    while True:
        community, improved = _one_level(adj, loops, two_m, resolution, rng)
        if not improved:
            break
        # renumber communities compactly, in order of first appearance
        remap: dict[int, int] = {}
        for c in community:
            if c not in remap:
                remap[c] = len(remap)
        community = [remap[c] for c in community]
        membership = [community[m] for m in membership]
        # aggregate into super-node graph
        n_new = len(remap)
        new_adj: list[dict[int, float]] = [{} for _ in range(n_new)]
        new_loops = [0.0] * n_new
        for i, neighbors in enumerate(adj):
            ci = community[i]
            new_loops[ci] += loops[i]
            for j, w in neighbors.items():
                cj = community[j]
                if ci == cj:
                    if i < j:
                        new_loops[ci] += w
                elif w:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
        adj, loops = new_adj, new_loops
        if n_new == 1:
            break

    # refinement: single-node moves on the original graph, starting from
    # the multilevel result, until no further gain
    orig_loops = [0.0] * len(node_ids)
    while True:
        membership, improved = _one_level(
            orig_adj, orig_loops, two_m, resolution, rng, init=membership
        )
        if not improved:
            break

    membership = _pair_refine(orig_adj, two_m, resolution, membership)
    return _normalize(node_ids, membership)


PAIR_REFINE_MAX_NODES = 16


def _pair_refine(
    adj: list[dict[int, float]],
    two_m: float,
    resolution: float,
    membership: list[int],
) -> list[int]:
    """Steepest-ascent joint moves of node pairs; escapes local optima that
    single-node moves cannot leave. Quadratic, so only for small graphs."""
    n = len(adj)
    if n > PAIR_REFINE_MAX_NODES:
        return membership

    k = [sum(adj[i].values()) for i in range(n)]

    def q_of(assign: list[int]) -> float:
        internal: dict[int, float] = {}
        tot: dict[int, float] = {}
        for i in range(n):
            tot[assign[i]] = tot.get(assign[i], 0.0) + k[i]
            for j, w in adj[i].items():
                if i < j and assign[i] == assign[j]:
                    internal[assign[i]] = internal.get(assign[i], 0.0) + w
        return sum(
            2.0 * internal.get(c, 0.0) / two_m - resolution * (tot[c] / two_m) ** 2
            for c in tot
        )

    assign = list(membership)
    current_q = q_of(assign)
    while True:
        best_q = current_q
        best_move = None
        fresh = max(assign) + 1
        candidates = [
            sorted({assign[nb] for nb in adj[i]} | {assign[i], fresh}) for i in range(n)
        ]
        for i in range(n):
            for j in range(i + 1, n):
                for ci in candidates[i]:
                    for cj in candidates[j]:
                        if ci == assign[i] and cj == assign[j]:
                            continue
                        old_i, old_j = assign[i], assign[j]
                        assign[i], assign[j] = ci, cj
                        q = q_of(assign)
                        assign[i], assign[j] = old_i, old_j
                        if q > best_q + 1e-12:
                            best_q = q
                            best_move = (i, j, ci, cj)
        if best_move is None:
            return assign
        i, j, ci, cj = best_move
        assign[i], assign[j] = ci, cj
        current_q = best_q


def _normalize(node_ids: list[str], membership: list[int]) -> Partition:
    groups: dict[int, list[str]] = {}
    for node, c in zip(node_ids, membership):
        groups.setdefault(c, []).append(node)
    ordered = sorted(groups.values(), key=lambda members: (-len(members), min(members)))
    assignment = {
        node: cluster_id
        for cluster_id, members in enumerate(ordered, start=1)
        for node in members
    }
    return Partition(assignment=assignment, cluster_count=len(ordered))
