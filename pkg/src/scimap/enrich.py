"""Community labeling (LLM-backed with a deterministic fallback) and
per-cluster citation hotness scores."""

from __future__ import annotations

import datetime
import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import httpx

from scimap.communities import Partition
from scimap.corpus import Publication

LABELING_PROMPT = (
    "You have been tasked with naming distinct fields of study for several "
    "communities of research publications. Below are lists of topics and their "
    "weights representing each community. Your goal is to provide a unique and "
    "descriptive name for each field of study that best encapsulates the essence "
    "of the topics within that community. Each should be unique and as short as "
    "possible. If the list of topic is empty, output a empty string. Output as "
    "JSON object with the list number and the single unique generated name."
)

DEFAULT_MODEL = "open-mistral-nemo"
DEFAULT_BASE_URL = "https://api.mistral.ai/v1"
API_KEY_ENV = "SCIMAP_LLM_API_KEY"
TOPIC_PUBLICATION_LIMIT = 2000


class LabelingUnavailable(RuntimeError):
    """The labeling endpoint could not be reached or answered abnormally."""


class ParseFailure(ValueError):
    """No usable JSON object in the labeling response."""


@dataclass
class LlmConfig:
    base_url: str = DEFAULT_BASE_URL
    model: str = DEFAULT_MODEL
    api_key: Optional[str] = None
    timeout: float = 30.0
    retries: int = 2
    fixture_path: Optional[str] = None

    def resolved_key(self) -> Optional[str]:
        return self.api_key or os.environ.get(API_KEY_ENV)


@dataclass
class CommunityTopicList:
    cluster_id: int
    topics: list[tuple[str, int]] = field(default_factory=list)


@dataclass
class ClusterInfo:
    cluster_id: int
    name: str = ""
    citation_score: float = 0.0
    publication_count: int = 0


def assign_publications(
    p: Partition,
    pubs: list[Publication],
    entity_type: str = "topic",
) -> dict[int, list[str]]:
    """Assign each publication to the cluster holding the plurality of its
    graph-present entities (ties: lowest cluster id). Publications with no
    entity on the map stay unassigned. Input order (relevance rank) is kept."""
    out: dict[int, list[str]] = {c: [] for c in range(1, p.cluster_count + 1)}
    for pub in pubs:
        votes: Counter = Counter()
        for ref in pub.entities.get(entity_type, []):
            cluster = p.assignment.get(ref.serialized())
            if cluster is not None:
                votes[cluster] += 1
        if not votes:
            continue
        best = min(votes, key=lambda c: (-votes[c], c))
        out[best].append(pub.pub_id)
    return out


def topic_lists(
    assignments: dict[int, list[str]],
    docs: dict[str, Publication],
    limit: int = TOPIC_PUBLICATION_LIMIT,
) -> list[CommunityTopicList]:
    """Weighted topic lists per cluster over its top-`limit` ranked
    publications, weight descending then label ascending."""
    lists = []
    for cluster_id in sorted(assignments):
        counts: Counter = Counter()
        for pub_id in assignments[cluster_id][:limit]:
            for ref in docs[pub_id].entities.get("topic", []):
                counts[ref.label] += 1
        topics = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        lists.append(CommunityTopicList(cluster_id=cluster_id, topics=topics))
    return lists


def build_prompt(lists: list[CommunityTopicList]) -> str:
    if not lists:
        raise ValueError("at least one topic list is required")
    blocks = []
    for i, tl in enumerate(lists, start=1):
        body = ", ".join(f"{label} ({weight})" for label, weight in tl.topics)
        blocks.append(f"list{i} = [{body}]")
    return LABELING_PROMPT + "\n\n" + ",\n".join(blocks)


def request_labels(prompt: str, cfg: LlmConfig) -> str:
    """One chat-completion round-trip (or fixture replay); returns the text
    to hand to parse_labels."""
    if cfg.fixture_path:
        try:
            raw = open(cfg.fixture_path, encoding="utf-8").read()
        except OSError as exc:
            raise LabelingUnavailable(f"fixture unreadable: {exc}") from exc
        return _extract_content(raw)

    key = cfg.resolved_key()
    if not key:
        raise LabelingUnavailable(f"no API key (set {API_KEY_ENV})")
    payload = {
        "model": cfg.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": 0,
    }
    last_error: Exception | None = None
    for attempt in range(cfg.retries + 1):
        try:
            resp = httpx.post(
                f"{cfg.base_url.rstrip('/')}/chat/completions",
                json=payload,
                headers={"Authorization": f"Bearer {key}"},
                timeout=cfg.timeout,
            )
            if resp.status_code // 100 == 2:
                return _extract_content(resp.text)
            last_error = LabelingUnavailable(f"HTTP {resp.status_code}")
        except httpx.HTTPError as exc:
            last_error = exc
        if attempt < cfg.retries:
            time.sleep(0.5 * 2**attempt)
    raise LabelingUnavailable(str(last_error))


def _extract_content(raw: str) -> str:
    """Unwrap a chat-completion envelope if the text is one; otherwise the
    text already is the assistant message."""
    try:
        body = json.loads(raw)
        return body["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError):
        return raw


def parse_labels(raw: str, expected: list[int]) -> dict[int, str]:
    """Extract the first JSON object in the text and map listN keys to
    cluster ids. Missing or extra keys are tolerated."""
    obj = _first_json_object(raw)
    if obj is None:
        raise ParseFailure("no JSON object found in labeling response")
    names: dict[int, str] = {}
    for key, value in obj.items():
        digits = "".join(ch for ch in str(key) if ch.isdigit())
        if not digits or not isinstance(value, str):
            continue
        cluster_id = int(digits)
        if cluster_id in expected:
            names[cluster_id] = value.strip()
    return names


def _first_json_object(text: str) -> Optional[dict]:
    decoder = json.JSONDecoder()
    start = text.find("{")
    while start != -1:
        try:
            obj, _ = decoder.raw_decode(text, start)
            if isinstance(obj, dict):
                return obj
        except ValueError:
            pass
        start = text.find("{", start + 1)
    return None


def fallback_labels(lists: list[CommunityTopicList]) -> dict[int, str]:
    """Deterministic names: the two heaviest topic labels joined by ' / '."""
    return {
        tl.cluster_id: " / ".join(label for label, _ in tl.topics[:2])
        for tl in lists
    }


def label_clusters(
    lists: list[CommunityTopicList],
    mode: str = "fallback",
    cfg: Optional[LlmConfig] = None,
) -> dict[int, str]:
    """Resolve cluster names per the labeling mode; LLM failures always
    degrade to the fallback names."""
    if mode == "off":
        return {tl.cluster_id: "" for tl in lists}
    if mode == "llm" and lists:
        try:
            raw = request_labels(build_prompt(lists), cfg or LlmConfig())
            names = parse_labels(raw, [tl.cluster_id for tl in lists])
        except (LabelingUnavailable, ParseFailure):
            names = {}
        fallback = fallback_labels(lists)
        return {tl.cluster_id: names.get(tl.cluster_id, fallback[tl.cluster_id]) for tl in lists}
    return fallback_labels(lists)


def citation_score(
    pub_ids: list[str],
    docs: dict[str, Publication],
    current_year: Optional[int] = None,
) -> tuple[float, int]:
    """(recent citations per publication, publication count) for a cluster.
    Recent = the current calendar year and the previous one."""
    if current_year is None:
        current_year = datetime.date.today().year
    count = len(pub_ids)
    if count == 0:
        return 0.0, 0
    recent = 0
    for pub_id in pub_ids:
        cby = docs[pub_id].citations_by_year
        recent += cby.get(current_year, 0) + cby.get(current_year - 1, 0)
    return recent / count, count


def cluster_infos(
    partition: Partition,
    assignments: dict[int, list[str]],
    names: dict[int, str],
    docs: dict[str, Publication],
    current_year: Optional[int] = None,
) -> list[ClusterInfo]:
    infos = []
    for cluster_id in range(1, partition.cluster_count + 1):
        score, count = citation_score(assignments.get(cluster_id, []), docs, current_year)
        infos.append(
            ClusterInfo(
                cluster_id=cluster_id,
                name=names.get(cluster_id, ""),
                citation_score=score,
                publication_count=count,
            )
        )
    return infos
