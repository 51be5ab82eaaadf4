"""Cross-source instance matching.

A counterpart instance must agree strictly on every matching property:
exactly equal normalized name, every extra property exactly equal after
normalization, and, when both sides carry coordinates, a distance within
the query radius.  Missing geo on either side does not veto a match.  The
strictness is deliberate; anything fuzzier would let the scorer compare
different real-world entities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import SourceError
from .geo import haversine_m
from .model import GEO_PROPERTY, DomainSpecification, Geo, Instance
from .normalize import normalize
from .similarity import SimilarityFunction, default_similarity
from .sources.base import KnowledgeSource, SourceRecord

DEFAULT_RADIUS_M = 500.0


@dataclass(frozen=True)
class MatchQuery:
    """Normalized lookup key for one instance."""

    name: str
    geo: Optional[Geo] = None
    radius_m: float = DEFAULT_RADIUS_M
    extra: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.radius_m <= 0:
            raise ValueError("radius must be > 0")
        populated = bool(self.name) + (self.geo is not None) + len(self.extra)
        if populated < 2:
            raise ValueError("a match query needs at least two populated fields")


@dataclass(frozen=True)
class MatchResult:
    source_id: str
    matched: bool
    candidate: Optional[SourceRecord] = None
    distance_m: Optional[float] = None
    candidates_considered: int = 0
    error: Optional[str] = None


def similarity_map_for(
    ds: DomainSpecification, overrides: Optional[dict[str, SimilarityFunction]] = None
) -> dict[str, SimilarityFunction]:
    """Per-property similarity functions: config overrides, then defaults."""
    functions = {}
    for prop in ds.attribute_properties:
        if overrides and prop in overrides:
            functions[prop] = overrides[prop]
        else:
            functions[prop] = default_similarity(prop)
    return functions


def build_match_query(
    instance: Instance,
    ds: DomainSpecification,
    radius_m: float = DEFAULT_RADIUS_M,
    similarity_map: Optional[dict[str, SimilarityFunction]] = None,
) -> MatchQuery:
    """Build the query for an instance from the DS matching properties.

    Multi-valued matching properties contribute their first value.  Raises
    ValueError when fewer than two matching properties are populated.
    """
    functions = similarity_map or {}
    name_norm = functions.get("name", default_similarity("name")).normalizer
    name_value = instance.first_value("name")
    extra = {}
    geo = None
    for prop in ds.matching_properties:
        if prop == "name":
            continue
        if prop == GEO_PROPERTY:
            geo = instance.geo
            continue
        value = instance.first_value(prop)
        if value is not None:
            normalizer = functions.get(prop, default_similarity(prop)).normalizer
            extra[prop] = normalize(value, normalizer)
    return MatchQuery(
        name=normalize(name_value, name_norm) if name_value else "",
        geo=geo,
        radius_m=radius_m,
        extra=extra,
    )


def match_instance(
    query: MatchQuery,
    source: KnowledgeSource,
    similarity_map: Optional[dict[str, SimilarityFunction]] = None,
) -> MatchResult:
    """Find the source record that strictly matches the query.

    Among qualifying candidates the nearest wins; without distances (or on
    ties) the lexicographically smallest record id wins.  Source failures
    are reported inside the result, never raised.
    """
    functions = similarity_map or {}
    try:
        candidates = source.search(query)
    except SourceError as exc:
        return MatchResult(source_id=source.source_id, matched=False, error=str(exc))

    qualifying: list[tuple[float, str, Optional[float], SourceRecord]] = []
    for record in candidates:
        if normalize(record.name, functions.get("name", default_similarity("name")).normalizer) != query.name:
            continue
        distance = None
        if query.geo is not None and record.geo is not None:
            distance = haversine_m(query.geo, record.geo)
            if distance > query.radius_m:
                continue
        if not _extras_match(query, record, functions):
            continue
        sort_distance = distance if distance is not None else float("inf")
        qualifying.append((sort_distance, record.record_id, distance, record))

    if not qualifying:
        return MatchResult(
            source_id=source.source_id, matched=False, candidates_considered=len(candidates)
        )
    qualifying.sort(key=lambda entry: (entry[0], entry[1]))
    _, _, distance, best = qualifying[0]
    return MatchResult(
        source_id=source.source_id,
        matched=True,
        candidate=best,
        distance_m=distance,
        candidates_considered=len(candidates),
    )


def _extras_match(
    query: MatchQuery, record: SourceRecord, functions: dict[str, SimilarityFunction]
) -> bool:
    for prop, expected in query.extra.items():
        normalizer = functions.get(prop, default_similarity(prop)).normalizer
        values = record.values(prop)
        if not any(normalize(v, normalizer) == expected for v in values):
            return False
    return True
