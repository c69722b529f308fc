"""VOSviewer-Online-compatible JSON serialization and validation."""

from __future__ import annotations

import json
import math
from typing import Union

from scimap.communities import Partition
from scimap.enrich import ClusterInfo
from scimap.graph import NetworkGraph
from scimap.layout import LayoutResult


class ExportError(ValueError):
    pass


def to_vosviewer(
    g: NetworkGraph,
    layout: LayoutResult,
    partition: Partition,
    infos: list[ClusterInfo],
) -> dict:
    """Build the VOSviewer document: items with position/cluster/weights,
    links with strength, clusters with labels. Deterministically ordered."""
    missing = sorted(
        set(g.nodes) - set(layout.positions) | set(g.nodes) - set(partition.assignment)
    )
    if missing:
        raise ExportError(f"layout/partition missing nodes: {missing}")

    score_by_cluster = {info.cluster_id: info.citation_score for info in infos}
    degrees = {n: 0 for n in g.nodes}
    for u, v in g.edges:
        degrees[u] += 1
        degrees[v] += 1

    items = []
    for node_id in sorted(g.nodes):
        data = g.nodes[node_id]
        x, y = layout.positions[node_id]
        cluster = partition.assignment[node_id]
        items.append(
            {
                "id": node_id,
                "label": data.entity.label or data.entity.id,
                "x": x,
                "y": y,
                "cluster": cluster,
                "weights": {
                    "Links": degrees[node_id],
                    "Total link strength": data.weight,
                },
                "scores": {"Citation score": score_by_cluster.get(cluster, 0.0)},
            }
        )

    links = [
        {"source_id": u, "target_id": v, "strength": g.edges[(u, v)]}
        for u, v in sorted(g.edges)
    ]

    name_by_cluster = {info.cluster_id: info.name for info in infos}
    clusters = [
        {"cluster": c, "label": name_by_cluster.get(c, "")}
        for c in range(1, partition.cluster_count + 1)
    ]

    return {"network": {"items": items, "links": links, "clusters": clusters}}


def serialize(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2)


def validate(doc: Union[str, dict]) -> list[str]:
    """Check the document against the VOSviewer template invariants.
    Returns human-readable violations; empty means valid."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            return [f"not valid JSON: {exc}"]
    violations: list[str] = []
    network = doc.get("network") if isinstance(doc, dict) else None
    if not isinstance(network, dict):
        return ["missing 'network' object"]

    items = network.get("items")
    links = network.get("links")
    if not isinstance(items, list):
        violations.append("missing 'network.items' list")
        items = []
    if not isinstance(links, list):
        violations.append("missing 'network.links' list")
        links = []

    ids = set()
    clusters_seen = set()
    for i, item in enumerate(items):
        item_id = item.get("id")
        if not item_id:
            violations.append(f"item {i} missing id")
            continue
        if item_id in ids:
            violations.append(f"duplicate item id {item_id!r}")
        ids.add(item_id)
        for coord in ("x", "y"):
            value = item.get(coord)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                violations.append(f"item {item_id!r} has non-finite {coord}")
        cluster = item.get("cluster")
        if not isinstance(cluster, int) or cluster < 1:
            violations.append(f"item {item_id!r} has invalid cluster {cluster!r}")
        else:
            clusters_seen.add(cluster)

    if clusters_seen and sorted(clusters_seen) != list(range(1, max(clusters_seen) + 1)):
        violations.append(f"cluster ids not 1-based contiguous: {sorted(clusters_seen)}")

    for i, link in enumerate(links):
        for endpoint in ("source_id", "target_id"):
            if link.get(endpoint) not in ids:
                violations.append(f"link {i} references unknown {endpoint} {link.get(endpoint)!r}")
        strength = link.get("strength")
        if not isinstance(strength, (int, float)) or not strength > 0:
            violations.append(f"link {i} has non-positive strength {strength!r}")

    clusters = network.get("clusters", [])
    if isinstance(clusters, list):
        declared = {c.get("cluster") for c in clusters if isinstance(c, dict)}
        missing = clusters_seen - declared
        if missing:
            violations.append(f"clusters section missing ids {sorted(missing)}")
    return violations
