"""Publication data model, JSONL parsing, hyperauthorship filter and
per-publication co-occurrence pair precomputation."""

from __future__ import annotations

import json
import sys
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Optional

ENTITY_TYPES = (
    "topic",
    "author",
    "institution",
    "laboratory",
    "software",
    "funding",
    "country",
)

PAIR_SEP = "---"
ID_SEP = "###"

DEFAULT_MAX_AUTHORS = 50


class CorpusError(ValueError):
    """Malformed corpus line or record."""


@dataclass(frozen=True)
class EntityRef:
    """A disambiguated entity: persistent identifier plus display label."""

    entity_type: str
    id: str
    label: str = ""

    def serialized(self) -> str:
        return f"{self.id}{ID_SEP}{self.label}"


@dataclass
class Publication:
    pub_id: str
    year: int
    title: str = ""
    abstract: Optional[str] = None
    entities: dict[str, list[EntityRef]] = field(default_factory=dict)
    citations_by_year: dict[int, int] = field(default_factory=dict)
    author_count: int = 0


@dataclass
class IngestReport:
    """Counts accumulated while reading a corpus file."""

    accepted: int = 0
    filtered_hyperauthor: int = 0
    skipped_entities: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "accepted": self.accepted,
                "filtered_hyperauthor": self.filtered_hyperauthor,
                "skipped_entities": self.skipped_entities,
            }
        )


def _clean_entities(raw: dict, report: Optional[IngestReport]) -> dict[str, list[EntityRef]]:
    entities: dict[str, list[EntityRef]] = {}
    for etype, items in raw.items():
        if etype not in ENTITY_TYPES or not isinstance(items, list):
            continue
        seen_ids: set[str] = set()
        refs: list[EntityRef] = []
        for item in items:
            if not isinstance(item, dict):
                continue
            eid = item.get("id") or ""
            label = item.get("label") or ""
            # Entities without a PID cannot be disambiguated; separator
            # bytes would corrupt pair keys.
            if not eid or ID_SEP in eid or PAIR_SEP in eid or ID_SEP in label or PAIR_SEP in label:
                if report is not None:
                    report.skipped_entities += 1
                continue
            if eid in seen_ids:
                continue
            seen_ids.add(eid)
            refs.append(EntityRef(entity_type=etype, id=eid, label=label))
        if refs:
            entities[etype] = refs
    return entities


def parse_publication(
    line: str,
    line_number: Optional[int] = None,
    report: Optional[IngestReport] = None,
) -> Publication:
    """Parse one JSONL record into a validated Publication.

    Unknown fields are ignored. Raises CorpusError on malformed JSON or
    missing pub_id/year.
    """
    where = f" at line {line_number}" if line_number is not None else ""
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed JSON{where}: {exc}") from exc
    if not isinstance(raw, dict):
        raise CorpusError(f"expected a JSON object{where}")
    pub_id = raw.get("pub_id")
    if not pub_id:
        raise CorpusError(f"missing pub_id{where}")
    year = raw.get("year")
    if not isinstance(year, int):
        raise CorpusError(f"missing or non-integer year{where} (pub_id={pub_id})")

    entities = _clean_entities(raw.get("entities") or {}, report)

    citations: dict[int, int] = {}
    for key, value in (raw.get("citations_by_year") or {}).items():
        try:
            y = int(key)
        except (TypeError, ValueError):
            raise CorpusError(f"non-integer citation year {key!r}{where}")
        count = int(value)
        if count < 0:
            raise CorpusError(f"negative citation count for year {y}{where}")
        citations[y] = count

    author_count = raw.get("author_count")
    listed_authors = len(entities.get("author", []))
    if author_count is None:
        author_count = listed_authors
    author_count = max(int(author_count), listed_authors)

    return Publication(
        pub_id=str(pub_id),
        year=year,
        title=raw.get("title") or "",
        abstract=raw.get("abstract"),
        entities=entities,
        citations_by_year=citations,
        author_count=author_count,
    )


def passes_author_filter(p: Publication, max_authors: int = DEFAULT_MAX_AUTHORS) -> bool:
    """True iff the publication is not hyperauthored (author_count <= cap)."""
    return p.author_count <= max_authors


def pair_key(a: EntityRef, b: EntityRef) -> str:
    """Canonical pair key: the two serialized halves in ascending byte order."""
    ha, hb = a.serialized(), b.serialized()
    if ha > hb:
        ha, hb = hb, ha
    return f"{ha}{PAIR_SEP}{hb}"


def split_pair_key(key: str) -> tuple[tuple[str, str], tuple[str, str]]:
    """Split a pair key back into its ((id, label), (id, label)) halves."""
    halves = key.split(PAIR_SEP)
    if len(halves) != 2:
        raise CorpusError(f"malformed pair key: {key!r}")
    out = []
    for half in halves:
        parts = half.split(ID_SEP)
        if len(parts) != 2 or not parts[0]:
            raise CorpusError(f"malformed pair key: {key!r}")
        out.append((parts[0], parts[1]))
    return out[0], out[1]


def compute_pairs(p: Publication, entity_type: str) -> list[str]:
    """All unordered co-occurrence pair keys for one entity type, sorted.

    Self-pairs cannot occur because entity ids are unique within a type.
    """
    refs = p.entities.get(entity_type, [])
    return sorted(pair_key(a, b) for a, b in combinations(refs, 2))


def fold_labels(pubs: Iterable[Publication]) -> list[Publication]:
    """Rewrite every entity label to the most frequent label seen for its id
    (ties: lexicographically smallest). Opt-in cleanup for casing variants."""
    pubs = list(pubs)
    counts: dict[tuple[str, str], Counter] = {}
    for p in pubs:
        for etype, refs in p.entities.items():
            for ref in refs:
                counts.setdefault((etype, ref.id), Counter())[ref.label] += 1
    best = {
        key: min(counter.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        for key, counter in counts.items()
    }
    for p in pubs:
        for etype, refs in p.entities.items():
            p.entities[etype] = [
                EntityRef(ref.entity_type, ref.id, best[(etype, ref.id)]) for ref in refs
            ]
    return pubs


def load_corpus(
    path: str | Path,
    max_authors: int = DEFAULT_MAX_AUTHORS,
    report: Optional[IngestReport] = None,
) -> Iterator[Publication]:
    """Stream publications from a JSONL file, applying the author filter."""
    if report is None:
        report = IngestReport()
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            p = parse_publication(line, line_number=line_number, report=report)
            if not passes_author_filter(p, max_authors):
                report.filtered_hyperauthor += 1
                continue
            report.accepted += 1
            yield p


def write_report(report: IngestReport, path: Optional[str] = None) -> None:
    if path:
        Path(path).write_text(report.to_json() + "\n", encoding="utf-8")
    else:
        print(report.to_json(), file=sys.stderr)
