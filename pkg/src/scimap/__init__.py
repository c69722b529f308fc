"""Co-occurrence network maps from enriched publication corpora.

Pipeline: JSONL corpus -> inverted index with top-K link aggregation ->
weighted co-occurrence graph -> component/betweenness filtering ->
force-directed layout -> Louvain communities -> labeling + citation
scores -> VOSviewer-compatible JSON.
"""

from scimap.corpus import EntityRef, Publication, parse_publication, compute_pairs
from scimap.index import (
    CorpusIndex,
    LinkAggregate,
    QuerySpec,
    aggregate_links,
    build_index,
    match_query,
)
from scimap.graph import NetworkGraph, FilterConfig, build_graph, reduce_graph
from scimap.layout import LayoutConfig, infer_settings, run_layout
from scimap.communities import Partition, louvain, modularity
from scimap.export import to_vosviewer, validate

__version__ = "0.1.0"

__all__ = [
    "EntityRef",
    "Publication",
    "parse_publication",
    "compute_pairs",
    "CorpusIndex",
    "LinkAggregate",
    "QuerySpec",
    "build_index",
    "match_query",
    "aggregate_links",
    "NetworkGraph",
    "FilterConfig",
    "build_graph",
    "reduce_graph",
    "LayoutConfig",
    "infer_settings",
    "run_layout",
    "Partition",
    "louvain",
    "modularity",
    "to_vosviewer",
    "validate",
]
