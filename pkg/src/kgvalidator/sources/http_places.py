"""Connector for places-style JSON search APIs.

Speaks a generic nearby-search shape: GET with name/lat/lon/radius
parameters, answered by {"results": [{id, name, lat, lon, <extra fields>}]}.
Vendor-specific field names are bridged by the DS alias map for this source,
not by code forks.
"""

from __future__ import annotations

import os
import time
from typing import TYPE_CHECKING, Optional

import requests

from ..errors import SourceError
from ..mapping import apply_aliases
from ..model import DomainSpecification, Geo
from .base import KnowledgeSourceHandle, SourceRecord, order_records
from .ratelimit import RateLimiter

if TYPE_CHECKING:
    from ..matching import MatchQuery

_RESERVED_KEYS = ("id", "name", "lat", "lon")

RETRY_BACKOFF_S = 0.5


class PlacesHttpSource:
    def __init__(
        self,
        handle: KnowledgeSourceHandle,
        ds: DomainSpecification,
        limiter: Optional[RateLimiter] = None,
        timeout_s: float = 10.0,
        backoff_sleep=None,
    ):
        self.handle = handle
        self.source_id = handle.source_id
        self.ds = ds
        self.limiter = limiter or RateLimiter(handle.rate_limit)
        self.timeout_s = timeout_s
        self._sleep = backoff_sleep if backoff_sleep is not None else time.sleep

    def _params(self, query: "MatchQuery") -> dict:
        params = {"name": query.name}
        if query.geo is not None:
            params["lat"] = str(query.geo.lat)
            params["lon"] = str(query.geo.lon)
            params["radius"] = str(query.radius_m)
        for prop, value in sorted(query.extra.items()):
            params[prop] = value
        if self.handle.auth_env:
            key = os.environ.get(self.handle.auth_env)
            if not key:
                raise SourceError(
                    self.source_id, "auth", f"environment variable {self.handle.auth_env} is not set"
                )
            params["key"] = key
        return params

    def _request(self, query: "MatchQuery") -> requests.Response:
        self.limiter.acquire()
        try:
            return requests.get(self.handle.endpoint, params=self._params(query), timeout=self.timeout_s)
        except requests.exceptions.RequestException as exc:
            raise SourceError(self.source_id, "network", str(exc)) from exc

    def search(self, query: "MatchQuery") -> list[SourceRecord]:
        response = self._request(query)
        if response.status_code == 429:
            # One retry after backoff, then give up.
            self._sleep(RETRY_BACKOFF_S)
            response = self._request(query)
            if response.status_code == 429:
                raise SourceError(self.source_id, "rate-limited", "still throttled after retry")
        if response.status_code in (401, 403):
            raise SourceError(self.source_id, "auth", f"HTTP {response.status_code}")
        if response.status_code != 200:
            raise SourceError(self.source_id, "network", f"HTTP {response.status_code}")

        try:
            doc = response.json()
            results = doc["results"]
        except (ValueError, KeyError) as exc:
            raise SourceError(self.source_id, "parse", f"malformed response: {exc}") from exc

        records = []
        for i, hit in enumerate(results):
            try:
                records.append(self._to_record(hit, i))
            except (TypeError, ValueError, KeyError) as exc:
                raise SourceError(self.source_id, "parse", f"bad result {i}: {exc}") from exc
        return order_records(records, query)

    def _to_record(self, hit: dict, index: int) -> SourceRecord:
        geo = None
        if hit.get("lat") is not None and hit.get("lon") is not None:
            geo = Geo(float(hit["lat"]), float(hit["lon"]))
        raw_props = {
            key: value if isinstance(value, list) else [value]
            for key, value in hit.items()
            if key not in _RESERVED_KEYS and value is not None
        }
        raw_props = {k: [str(v) for v in vs] for k, vs in raw_props.items()}
        raw_props.setdefault("name", [str(hit["name"])])
        return SourceRecord(
            record_id=str(hit.get("id", f"result-{index}")),
            name=str(hit["name"]),
            geo=geo,
            properties=apply_aliases(raw_props, self.source_id, self.ds),
        )
