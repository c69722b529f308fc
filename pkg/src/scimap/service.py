"""Pipeline orchestration, perimeter registry and the HTTP API."""

from __future__ import annotations

import hashlib
import json
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response
from pydantic import BaseModel

from scimap import communities, enrich, export, graph, index, layout
from scimap.index import CorpusIndex, QuerySpec

EMPTY_NETWORK = {"items": [], "links": [], "clusters": []}


@dataclass
class NetworkRequest:
    q: str = ""
    model: str = "topic"
    max_nodes: int = graph.DEFAULT_MAX_NODES
    top_links: int = index.DEFAULT_TOP_LINKS
    perimeter_id: Optional[str] = None
    seed: Optional[int] = None
    labeling: str = "fallback"  # llm | fallback | off


@dataclass
class PerimeterRegistry:
    """Named publication subsets, persisted as a JSON key-value file."""

    path: Optional[Path] = None
    _perimeters: dict[str, set[str]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    @classmethod
    def open(cls, path: Optional[str | Path]) -> "PerimeterRegistry":
        reg = cls(path=Path(path) if path else None)
        if reg.path and reg.path.exists():
            raw = json.loads(reg.path.read_text(encoding="utf-8"))
            reg._perimeters = {k: set(v) for k, v in raw.items()}
        return reg

    def register(self, perimeter_id: str, pub_ids: set[str]) -> None:
        if not perimeter_id:
            raise ValueError("perimeter_id must be non-empty")
        with self._lock:
            self._perimeters[perimeter_id] = set(pub_ids)
            if self.path:
                payload = {k: sorted(v) for k, v in sorted(self._perimeters.items())}
                self.path.write_text(json.dumps(payload), encoding="utf-8")

    def get(self, perimeter_id: str) -> Optional[set[str]]:
        with self._lock:
            pubs = self._perimeters.get(perimeter_id)
            return set(pubs) if pubs is not None else None


def derive_seed(req: NetworkRequest) -> int:
    """Stable request-derived seed so identical requests map identically."""
    if req.seed is not None:
        return req.seed
    canonical = "|".join(
        [req.q, req.model, str(req.max_nodes), str(req.top_links), req.perimeter_id or ""]
    )
    return int.from_bytes(hashlib.sha256(canonical.encode()).digest()[:8], "big") >> 1


def handle_get_network(
    ix: CorpusIndex,
    req: NetworkRequest,
    registry: Optional[PerimeterRegistry] = None,
    llm_cfg: Optional[enrich.LlmConfig] = None,
    current_year: Optional[int] = None,
) -> dict:
    """Run query -> aggregate -> build -> filter -> layout -> cluster ->
    label -> score -> export; returns {"network": ..., "diagnostics": ...}."""
    seed = derive_seed(req)
    timings: dict[str, float] = {}
    diagnostics: dict = {"seed": seed, "timings_ms": timings}

    def timed(name: str, fn):
        start = time.perf_counter()
        result = fn()
        timings[name] = round((time.perf_counter() - start) * 1000.0, 3)
        return result

    perimeter = None
    if req.perimeter_id is not None:
        if registry is None or (perimeter := registry.get(req.perimeter_id)) is None:
            raise KeyError(req.perimeter_id)

    spec = QuerySpec(
        text=req.q, entity_type=req.model, top_links=req.top_links, perimeter=perimeter
    )
    matched = timed("match", lambda: index.match_query(ix, spec))
    diagnostics["matched_docs"] = len(matched)

    aggs = timed(
        "aggregate", lambda: index.aggregate_links(ix, matched, req.model, req.top_links)
    )
    g = timed("build_graph", lambda: graph.build_graph(aggs, req.model))
    diagnostics["pre_filter_nodes"] = g.order()

    cfg = graph.FilterConfig(max_nodes=req.max_nodes)
    g = timed("filter", lambda: graph.reduce_graph(g, cfg))
    diagnostics["post_filter_nodes"] = g.order()
    diagnostics["edges"] = len(g.edges)

    if g.order() == 0 or not g.edges:
        diagnostics["modularity"] = None
        diagnostics["clusters"] = 0
        return {"network": dict(EMPTY_NETWORK), "diagnostics": diagnostics}

    lay_cfg = layout.infer_settings(g.order(), seed=seed)
    lay = timed("layout", lambda: layout.run_layout(g, lay_cfg))

    partition = timed("louvain", lambda: communities.louvain(g, seed=seed))
    diagnostics["clusters"] = partition.cluster_count
    diagnostics["modularity"] = communities.modularity(g, partition)

    pubs = index.top_publications(ix, matched)
    assignments = enrich.assign_publications(partition, pubs, req.model)
    lists = enrich.topic_lists(assignments, ix.docs)
    names = timed("labeling", lambda: enrich.label_clusters(lists, req.labeling, llm_cfg))
    infos = enrich.cluster_infos(partition, assignments, names, ix.docs, current_year)

    doc = timed("export", lambda: export.to_vosviewer(g, lay, partition, infos))
    return {"network": doc["network"], "diagnostics": diagnostics}


class PerimeterBody(BaseModel):
    perimeter_id: str
    pub_ids: list[str]


def build_app(
    ix: CorpusIndex,
    registry: Optional[PerimeterRegistry] = None,
    llm_cfg: Optional[enrich.LlmConfig] = None,
) -> FastAPI:
    registry = registry or PerimeterRegistry()
    app = FastAPI(title="scimap")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "documents": len(ix.docs)}

    @app.get("/networks")
    def networks(
        q: str = "",
        model: str = "topic",
        max_nodes: int = graph.DEFAULT_MAX_NODES,
        top_links: int = index.DEFAULT_TOP_LINKS,
        perimeter: Optional[str] = None,
        seed: Optional[int] = None,
        labeling: str = "fallback",
    ) -> Response:
        req = NetworkRequest(
            q=q,
            model=model,
            max_nodes=max_nodes,
            top_links=top_links,
            perimeter_id=perimeter,
            seed=seed,
            labeling=labeling,
        )
        try:
            body = handle_get_network(ix, req, registry, llm_cfg)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown perimeter: {perimeter}")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        # timings vary run to run; drop them so identical seeded requests
        # produce byte-identical cacheable bodies
        body["diagnostics"].pop("timings_ms", None)
        return Response(
            content=json.dumps(body, ensure_ascii=False),
            media_type="application/json",
            headers={"Cache-Control": "public, max-age=3600"},
        )

    @app.post("/perimeters")
    def perimeters(body: PerimeterBody) -> dict:
        try:
            registry.register(body.perimeter_id, set(body.pub_ids))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"status": "registered", "perimeter_id": body.perimeter_id}

    return app
