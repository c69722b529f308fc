"""Embedded inverted index: full-text matching, perimeter filtering,
top-K link aggregation and relevance-ranked retrieval.

Emulates the terms-aggregation usage of a search engine backend, in
process, so the aggregation contracts would survive a backend swap.
"""

from __future__ import annotations

import pickle
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from scimap.corpus import Publication, compute_pairs

TOKEN_RE = re.compile(r"[^0-9a-z]+")

# Field weights for the relevance score (fixed for determinism).
TITLE_WEIGHT = 3
ABSTRACT_WEIGHT = 1
LABEL_WEIGHT = 2

DEFAULT_TOP_LINKS = 2000
DEFAULT_TOP_PUBLICATIONS = 2000

SNAPSHOT_MAGIC = b"SCIMAPIX"
SNAPSHOT_VERSION = 1


class CorpusIndexError(ValueError):
    """Index construction or snapshot failure."""


def tokenize(text: str) -> list[str]:
    return [t for t in TOKEN_RE.split(text.lower()) if t]


@dataclass(frozen=True)
class LinkAggregate:
    key: str
    doc_count: int


@dataclass
class QuerySpec:
    text: str = ""
    entity_type: str = "topic"
    top_links: int = DEFAULT_TOP_LINKS
    perimeter: Optional[set[str]] = None


@dataclass
class CorpusIndex:
    docs: dict[str, Publication] = field(default_factory=dict)
    # token -> pub_id -> weighted occurrence count
    postings: dict[str, dict[str, int]] = field(default_factory=dict)
    # (entity_type, pair_key) -> pub_ids
    pair_postings: dict[tuple[str, str], set[str]] = field(default_factory=dict)
    # (entity_type, entity_id) -> pub_ids
    entity_postings: dict[tuple[str, str], set[str]] = field(default_factory=dict)

    def add(self, p: Publication) -> None:
        if p.pub_id in self.docs:
            raise CorpusIndexError(f"duplicate pub_id: {p.pub_id}")
        self.docs[p.pub_id] = p

        weighted: Counter = Counter()
        for token in tokenize(p.title):
            weighted[token] += TITLE_WEIGHT
        if p.abstract:
            for token in tokenize(p.abstract):
                weighted[token] += ABSTRACT_WEIGHT
        for refs in p.entities.values():
            for ref in refs:
                for token in tokenize(ref.label):
                    weighted[token] += LABEL_WEIGHT
        for token, weight in weighted.items():
            self.postings.setdefault(token, {})[p.pub_id] = weight

        for etype in p.entities:
            for ref in p.entities[etype]:
                self.entity_postings.setdefault((etype, ref.id), set()).add(p.pub_id)
            for key in compute_pairs(p, etype):
                self.pair_postings.setdefault((etype, key), set()).add(p.pub_id)


def build_index(records: Iterable[Publication]) -> CorpusIndex:
    """Build an immutable in-memory index; order of records does not matter."""
    ix = CorpusIndex()
    for p in records:
        ix.add(p)
    return ix


def match_query(ix: CorpusIndex, q: QuerySpec) -> dict[str, float]:
    """Publications containing all query tokens (AND), scored, intersected
    with the perimeter when present. Empty text matches everything."""
    tokens = tokenize(q.text)
    if not tokens:
        matched: dict[str, float] = {pid: 0.0 for pid in ix.docs}
    else:
        candidate: Optional[set[str]] = None
        for token in tokens:
            pubs = set(ix.postings.get(token, ()))
            candidate = pubs if candidate is None else candidate & pubs
            if not candidate:
                return {}
        assert candidate is not None
        matched = {
            pid: float(sum(ix.postings[token][pid] for token in tokens))
            for pid in candidate
        }
    if q.perimeter is not None:
        matched = {pid: s for pid, s in matched.items() if pid in q.perimeter}
    return matched


def aggregate_links(
    ix: CorpusIndex,
    matched: Iterable[str],
    entity_type: str,
    top_k: int = DEFAULT_TOP_LINKS,
) -> list[LinkAggregate]:
    """Top-K strongest co-occurrence links among matched publications.

    Sorted by doc_count descending, ties by key ascending.
    """
    matched = set(matched)
    counts: list[LinkAggregate] = []
    for (etype, key), pubs in ix.pair_postings.items():
        if etype != entity_type:
            continue
        n = len(pubs & matched)
        if n:
            counts.append(LinkAggregate(key=key, doc_count=n))
    counts.sort(key=lambda a: (-a.doc_count, a.key))
    return counts[:top_k]


def top_publications(
    ix: CorpusIndex,
    matched: dict[str, float],
    limit: int = DEFAULT_TOP_PUBLICATIONS,
) -> list[Publication]:
    """Matched publications by relevance descending, ties by pub_id."""
    ranked = sorted(matched.items(), key=lambda kv: (-kv[1], kv[0]))
    return [ix.docs[pid] for pid, _ in ranked[:limit]]


def save_index(ix: CorpusIndex, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(SNAPSHOT_MAGIC)
        fh.write(SNAPSHOT_VERSION.to_bytes(2, "big"))
        pickle.dump(ix, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_index(path: str | Path) -> CorpusIndex:
    with open(path, "rb") as fh:
        magic = fh.read(len(SNAPSHOT_MAGIC))
        if magic != SNAPSHOT_MAGIC:
            raise CorpusIndexError(f"not an index snapshot: {path}")
        version = int.from_bytes(fh.read(2), "big")
        if version != SNAPSHOT_VERSION:
            raise CorpusIndexError(f"unsupported snapshot version {version}")
        return pickle.load(fh)
