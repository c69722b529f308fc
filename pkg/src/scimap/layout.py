"""Force-directed 2D layout (ForceAtlas2 family): degree-weighted
repulsion, linear spring attraction along edges, strong gravity, adaptive
speed, optional Barnes-Hut repulsion approximation for large graphs.

Settings are inferred from the network order; see infer_settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from scimap.graph import NetworkGraph

DEFAULT_ITERATIONS = 500
EPS = 1e-6
BARNES_HUT_THETA = 1.2


class LayoutError(ValueError):
    pass


@dataclass
class LayoutConfig:
    barnes_hut: bool = False
    strong_gravity: bool = True
    gravity: float = 0.05
    scaling_ratio: float = 10.0
    slow_down: float = 1.0
    iterations: int = DEFAULT_ITERATIONS
    seed: int = 0


@dataclass
class LayoutResult:
    positions: dict[str, tuple[float, float]]


def infer_settings(order: int, seed: int = 0) -> LayoutConfig:
    """Derive layout settings from the number of nodes."""
    if order < 0:
        raise LayoutError("order must be >= 0")
    return LayoutConfig(
        barnes_hut=order > 2000,
        strong_gravity=True,
        gravity=0.05,
        scaling_ratio=10.0,
        slow_down=1.0 + math.log(max(order, 1)),
        iterations=DEFAULT_ITERATIONS,
        seed=seed,
    )


class _QuadTree:
    """Barnes-Hut region tree over 2D points with masses."""

    __slots__ = ("center", "half", "mass", "com", "point", "children")

    def __init__(self, center: np.ndarray, half: float):
        self.center = center
        self.half = half
        self.mass = 0.0
        self.com = np.zeros(2)
        self.point: np.ndarray | None = None
        self.children: list["_QuadTree"] | None = None

    def insert(self, p: np.ndarray, m: float, depth: int = 0) -> None:
        if self.children is None and self.point is None and self.mass == 0.0:
            self.point = p
            self.mass = m
            self.com = p.copy()
            return
        if self.children is None:
            # occupied leaf: merge (near-)coincident points, otherwise split
            assert self.point is not None
            if depth > 40 or float(np.abs(p - self.point).max()) < EPS:
                self.com = (self.com * self.mass + p * m) / (self.mass + m)
                self.mass += m
                return
            old_p, old_m = self.point, self.mass
            self.point = None
            self.children = []
            h = self.half / 2.0
            for dx in (-h, h):
                for dy in (-h, h):
                    self.children.append(_QuadTree(self.center + np.array([dx, dy]), h))
            self._child_for(old_p).insert(old_p, old_m, depth + 1)
        self.com = (self.com * self.mass + p * m) / (self.mass + m)
        self.mass += m
        self._child_for(p).insert(p, m, depth + 1)

    def _child_for(self, p: np.ndarray) -> "_QuadTree":
        assert self.children is not None
        idx = (2 if p[0] >= self.center[0] else 0) + (1 if p[1] >= self.center[1] else 0)
        return self.children[idx]

    def repulsion(self, p: np.ndarray, m: float, coefficient: float) -> np.ndarray:
        diff = p - self.com
        d2 = float(diff @ diff)
        if self.children is None:
            if self.point is None or d2 < EPS * EPS:
                return np.zeros(2)
            return coefficient * m * self.mass * diff / d2
        if d2 > 0 and (2.0 * self.half) ** 2 / d2 < BARNES_HUT_THETA**2:
            return coefficient * m * self.mass * diff / d2
        out = np.zeros(2)
        for child in self.children:
            if child.mass > 0.0:
                out += child.repulsion(p, m, coefficient)
        return out


def _repulsion_barnes_hut(pos: np.ndarray, masses: np.ndarray, k: float) -> np.ndarray:
    lo, hi = pos.min(axis=0), pos.max(axis=0)
    center = (lo + hi) / 2.0
    half = max(float((hi - lo).max()) / 2.0, EPS)
    tree = _QuadTree(center, half)
    for i in range(len(pos)):
        tree.insert(pos[i], float(masses[i]))
    forces = np.zeros_like(pos)
    for i in range(len(pos)):
        # the tree contains the node itself; subtract nothing, the d2
        # guard in leaf cells skips the self term
        forces[i] = tree.repulsion(pos[i], float(masses[i]), k)
    return forces


def _repulsion_exact(pos: np.ndarray, masses: np.ndarray, k: float) -> np.ndarray:
    diff = pos[:, None, :] - pos[None, :, :]
    d2 = np.maximum((diff**2).sum(axis=2), EPS * EPS)
    np.fill_diagonal(d2, np.inf)
    factor = k * masses[:, None] * masses[None, :] / d2
    return (factor[:, :, None] * diff).sum(axis=1)


def _separate_coincident(pos: np.ndarray) -> None:
    seen: dict[tuple[float, float], int] = {}
    for i in range(len(pos)):
        key = (float(pos[i, 0]), float(pos[i, 1]))
        bump = 0
        while key in seen:
            bump += 1
            pos[i, 0] += EPS * bump
            key = (float(pos[i, 0]), float(pos[i, 1]))
        seen[key] = i


def run_layout(g: NetworkGraph, cfg: LayoutConfig) -> LayoutResult:
    """Deterministic layout for a fixed (graph, config) pair."""
    if g.order() == 0:
        raise LayoutError("cannot lay out an empty graph")
    node_ids = sorted(g.nodes)
    n = len(node_ids)
    idx = {node: i for i, node in enumerate(node_ids)}

    degrees = np.zeros(n)
    edge_u = np.empty(len(g.edges), dtype=np.int64)
    edge_v = np.empty(len(g.edges), dtype=np.int64)
    edge_w = np.empty(len(g.edges))
    for e, (u, v) in enumerate(sorted(g.edges)):
        edge_u[e], edge_v[e] = idx[u], idx[v]
        edge_w[e] = g.edges[(u, v)]
        degrees[idx[u]] += 1
        degrees[idx[v]] += 1
    masses = degrees + 1.0

    rng = np.random.default_rng(cfg.seed)
    radius = np.sqrt(rng.uniform(size=n)) * math.sqrt(n)
    angle = rng.uniform(0.0, 2.0 * math.pi, size=n)
    pos = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
    _separate_coincident(pos)

    prev_forces = np.zeros_like(pos)
    speed = 1.0
    for _ in range(cfg.iterations):
        if cfg.barnes_hut:
            forces = _repulsion_barnes_hut(pos, masses, cfg.scaling_ratio)
        else:
            forces = _repulsion_exact(pos, masses, cfg.scaling_ratio)

        # linear attraction along edges (edge weight influence = 1)
        diff = pos[edge_u] - pos[edge_v]
        pull = edge_w[:, None] * diff
        np.add.at(forces, edge_u, -pull)
        np.add.at(forces, edge_v, pull)

        if cfg.strong_gravity:
            forces -= cfg.gravity * masses[:, None] * pos
        else:
            dist = np.maximum(np.linalg.norm(pos, axis=1), EPS)
            forces -= cfg.gravity * masses[:, None] * pos / dist[:, None]

        swinging = np.linalg.norm(forces - prev_forces, axis=1)
        traction = np.linalg.norm(forces + prev_forces, axis=1) / 2.0
        global_swing = float((masses * swinging).sum())
        global_traction = float((masses * traction).sum())
        if global_swing > 0.0:
            speed = min(global_traction / global_swing, 1.5 * speed)

        node_speed = speed / (1.0 + speed * np.sqrt(swinging))
        step = forces * node_speed[:, None] / cfg.slow_down
        # bound per-iteration movement to keep the system stable
        norms = np.linalg.norm(step, axis=1)
        too_far = norms > 10.0
        if too_far.any():
            step[too_far] *= (10.0 / norms[too_far])[:, None]
        pos += step
        prev_forces = forces

    if not np.all(np.isfinite(pos)):
        raise LayoutError("layout diverged to non-finite coordinates")
    return LayoutResult(
        positions={node: (float(pos[i, 0]), float(pos[i, 1])) for node, i in idx.items()}
    )
