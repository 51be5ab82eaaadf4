"""Deterministic local snapshot standing in for a live source.

Fixture files make runs reproducible: the acceptance benchmarks and any
offline re-run validate against these instead of live endpoints.  Records
are indexed by normalized name at load time; a search returns exactly the
records a full scan would (equal normalized name, inside the radius when
both sides have coordinates), ordered by distance then record id.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Union

from ..errors import FixtureFormatError
from ..geo import haversine_m
from ..mapping import apply_aliases
from ..model import DomainSpecification, Geo
from ..normalize import normalize
from .base import SourceRecord, order_records

if TYPE_CHECKING:
    from ..matching import MatchQuery


class FixtureSnapshot:
    """Immutable set of records loaded from a fixture file."""

    def __init__(self, source_id: str, records: list[SourceRecord]):
        self.source_id = source_id
        self.records = tuple(records)
        self._by_name: dict[str, list[SourceRecord]] = {}
        for record in self.records:
            self._by_name.setdefault(normalize(record.name, "name"), []).append(record)

    def candidates(self, normalized_name: str) -> list[SourceRecord]:
        return list(self._by_name.get(normalized_name, []))


def load_fixture(
    path: Union[str, Path],
    ds: Optional[DomainSpecification] = None,
    source_id: Optional[str] = None,
) -> FixtureSnapshot:
    """Load a fixture file: {"sourceId": ..., "records": [...]}.

    When a DS is given, record properties are alias-mapped to canonical
    names, so everything downstream sees the common attribute space.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise FixtureFormatError(str(path), f"cannot read: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureFormatError(str(path), f"invalid JSON: {exc}") from exc

    if not isinstance(doc, dict) or "records" not in doc:
        raise FixtureFormatError(str(path), "expected an object with a 'records' array")
    sid = source_id or doc.get("sourceId")
    if not sid:
        raise FixtureFormatError(str(path), "missing sourceId")

    records = []
    for i, raw in enumerate(doc["records"]):
        if not isinstance(raw, dict):
            raise FixtureFormatError(str(path), f"record {i} is not an object")
        if not raw.get("id"):
            raise FixtureFormatError(str(path), f"record {i} is missing an id")
        if not raw.get("name"):
            raise FixtureFormatError(str(path), f"record {i} ({raw.get('id')}) is missing a name")
        lat, lon = raw.get("lat"), raw.get("lon")
        if (lat is None) != (lon is None):
            raise FixtureFormatError(str(path), f"record {i} has only one coordinate")
        geo = None
        if lat is not None:
            try:
                geo = Geo(float(lat), float(lon))
            except (TypeError, ValueError) as exc:
                raise FixtureFormatError(str(path), f"record {i}: bad coordinates: {exc}") from exc
        properties = raw.get("properties", {})
        if not isinstance(properties, dict):
            raise FixtureFormatError(str(path), f"record {i}: properties must be an object")
        properties = {str(k): [str(v) for v in vs] for k, vs in properties.items()}
        if ds is not None:
            properties = apply_aliases(properties, sid, ds)
        records.append(
            SourceRecord(record_id=str(raw["id"]), name=str(raw["name"]), geo=geo, properties=properties)
        )
    return FixtureSnapshot(sid, records)


class FixtureSource:
    """Search over an in-memory fixture snapshot."""

    def __init__(self, snapshot: FixtureSnapshot):
        self.snapshot = snapshot
        self.source_id = snapshot.source_id

    def search(self, query: "MatchQuery") -> list[SourceRecord]:
        hits = []
        for record in self.snapshot.candidates(query.name):
            if query.geo is not None and record.geo is not None:
                if haversine_m(query.geo, record.geo) > query.radius_m:
                    continue
            hits.append(record)
        return order_records(hits, query)
