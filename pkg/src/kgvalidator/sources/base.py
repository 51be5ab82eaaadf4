"""Source handles, records, and the connector interface."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Protocol

from ..errors import ConfigError
from ..model import DomainSpecification, Geo

if TYPE_CHECKING:
    from ..matching import MatchQuery

SOURCE_KINDS = ("fixture", "places-http", "sparql-http")

DEFAULT_RATE_LIMIT = 5.0


@dataclass(frozen=True)
class KnowledgeSourceHandle:
    """Configuration of one external knowledge source."""

    source_id: str
    kind: str
    endpoint: str  # URL for HTTP kinds, file path for fixtures
    auth_env: Optional[str] = None  # env var holding the API key
    rate_limit: float = DEFAULT_RATE_LIMIT  # max requests per second
    cache_dir: Optional[str] = None

    def __post_init__(self):
        if not self.source_id:
            raise ConfigError("source needs a sourceId")
        if self.kind not in SOURCE_KINDS:
            raise ConfigError(f"unknown source kind: {self.kind!r}")
        if self.kind != "fixture" and self.rate_limit <= 0:
            raise ConfigError(f"source {self.source_id}: rate limit must be > 0")

    @classmethod
    def from_dict(cls, doc: dict) -> "KnowledgeSourceHandle":
        try:
            return cls(
                source_id=doc["sourceId"],
                kind=doc["kind"],
                endpoint=doc["endpoint"],
                auth_env=doc.get("authEnv"),
                rate_limit=float(doc.get("rateLimit", DEFAULT_RATE_LIMIT)),
                cache_dir=doc.get("cacheDir"),
            )
        except KeyError as exc:
            raise ConfigError(f"source config missing field {exc}") from exc

    def to_public_dict(self) -> dict:
        """Serializable view; never resolves the API key itself."""
        return {
            "sourceId": self.source_id,
            "kind": self.kind,
            "endpoint": self.endpoint,
            "authEnv": self.auth_env,
            "rateLimit": self.rate_limit,
        }


@dataclass(frozen=True)
class SourceRecord:
    """One candidate instance from a source, with DS-named properties."""

    record_id: str
    name: str
    geo: Optional[Geo] = None
    properties: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.record_id:
            raise ValueError("record id must be non-empty")

    def values(self, prop: str) -> list[str]:
        if prop == "name":
            # The record's display name doubles as its 'name' property unless
            # the properties map overrides it.
            return self.properties.get("name", [self.name])
        return self.properties.get(prop, [])

    def to_dict(self) -> dict:
        return {
            "id": self.record_id,
            "name": self.name,
            "lat": self.geo.lat if self.geo else None,
            "lon": self.geo.lon if self.geo else None,
            "properties": {k: list(v) for k, v in self.properties.items()},
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SourceRecord":
        geo = None
        if doc.get("lat") is not None and doc.get("lon") is not None:
            geo = Geo(float(doc["lat"]), float(doc["lon"]))
        return cls(
            record_id=str(doc["id"]),
            name=str(doc.get("name", "")),
            geo=geo,
            properties={k: [str(x) for x in v] for k, v in doc.get("properties", {}).items()},
        )


class KnowledgeSource(Protocol):
    """A connector able to search for candidate records."""

    source_id: str

    def search(self, query: "MatchQuery") -> list[SourceRecord]: ...


def order_records(records: list[SourceRecord], query: "MatchQuery") -> list[SourceRecord]:
    """Search-result order shared by all connectors: ascending distance to the
    query location (records without a comparable location last), ties and
    distance-less results by record id."""
    from ..geo import haversine_m

    def key(record: SourceRecord):
        if query.geo is not None and record.geo is not None:
            return (haversine_m(query.geo, record.geo), record.record_id)
        return (float("inf"), record.record_id)

    return sorted(records, key=key)


def open_source(
    handle: KnowledgeSourceHandle,
    ds: DomainSpecification,
    clock=None,
    sleep=None,
) -> KnowledgeSource:
    """Instantiate the connector for a handle, with caching when configured.

    clock/sleep are injection points for the rate limiter (tests use a
    virtual clock).
    """
    from .cache import CachedSource
    from .fixture import FixtureSource, load_fixture
    from .http_places import PlacesHttpSource
    from .http_sparql import SparqlHttpSource
    from .ratelimit import RateLimiter

    if handle.kind == "fixture":
        return FixtureSource(load_fixture(handle.endpoint, ds=ds, source_id=handle.source_id))

    limiter_kwargs = {}
    if clock is not None:
        limiter_kwargs["clock"] = clock
    if sleep is not None:
        limiter_kwargs["sleep"] = sleep
    limiter = RateLimiter(handle.rate_limit, **limiter_kwargs)
    if handle.kind == "places-http":
        source: KnowledgeSource = PlacesHttpSource(handle, ds, limiter=limiter)
    else:
        source = SparqlHttpSource(handle, ds, limiter=limiter)
    if handle.cache_dir:
        return CachedSource(source, Path(handle.cache_dir))
    return source
