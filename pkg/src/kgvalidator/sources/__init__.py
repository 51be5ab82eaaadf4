"""Pluggable external knowledge-source connectors."""

from .base import KnowledgeSourceHandle, SourceRecord, open_source
from .cache import CachedSource
from .fixture import FixtureSource, load_fixture
from .http_places import PlacesHttpSource
from .http_sparql import SparqlHttpSource
from .ratelimit import RateLimiter

__all__ = [
    "KnowledgeSourceHandle",
    "SourceRecord",
    "open_source",
    "CachedSource",
    "FixtureSource",
    "load_fixture",
    "PlacesHttpSource",
    "SparqlHttpSource",
    "RateLimiter",
]
