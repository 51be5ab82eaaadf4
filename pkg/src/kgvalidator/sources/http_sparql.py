"""Connector that searches a SPARQL endpoint for candidate instances.

One SELECT per query: subjects of the target type whose name-like property
case-insensitively equals the query name, together with all their triples.
Strictness (diacritics, punctuation, extra matching properties) is enforced
client-side by the matcher; the endpoint filter only narrows candidates.
"""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING, Optional

from ..errors import NetworkError, SourceError
from ..mapping import apply_aliases
from ..model import DomainSpecification, Geo, Iri
from ..sparql import binding_term, parse_sparql_json, run_select
from .base import KnowledgeSourceHandle, SourceRecord, order_records
from .ratelimit import RateLimiter

if TYPE_CHECKING:
    from ..matching import MatchQuery

_LAT_NAMES = ("latitude", "lat")
_LON_NAMES = ("longitude", "lon", "lng")


def _sparql_escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


class SparqlHttpSource:
    def __init__(
        self,
        handle: KnowledgeSourceHandle,
        ds: DomainSpecification,
        limiter: Optional[RateLimiter] = None,
        timeout_s: float = 30.0,
    ):
        self.handle = handle
        self.source_id = handle.source_id
        self.ds = ds
        self.limiter = limiter or RateLimiter(handle.rate_limit)
        self.timeout_s = timeout_s

    def build_query(self, query: "MatchQuery") -> str:
        name = _sparql_escape(query.name)
        target = self.ds.target_type
        return (
            "SELECT ?s ?p ?o WHERE {\n"
            "  ?s a ?type .\n"
            f'  FILTER (STRENDS(STR(?type), "/{target}") || STRENDS(STR(?type), "#{target}"))\n'
            "  ?s ?nameProp ?name .\n"
            '  FILTER (STRENDS(STR(?nameProp), "/name") || STRENDS(STR(?nameProp), "#name")'
            ' || STRENDS(STR(?nameProp), "#label"))\n'
            f'  FILTER (LCASE(STR(?name)) = "{name}")\n'
            "  ?s ?p ?o .\n"
            "} LIMIT 1000"
        )

    def search(self, query: "MatchQuery") -> list[SourceRecord]:
        self.limiter.acquire()
        try:
            doc = run_select(self.handle.endpoint, self.build_query(query), timeout_s=self.timeout_s)
        except NetworkError as exc:
            raise SourceError(self.source_id, "network", str(exc)) from exc

        by_subject: dict[str, dict[str, list[str]]] = defaultdict(dict)
        names: dict[str, str] = {}
        for binding in parse_sparql_json(doc):
            s = binding_term(binding.get("s"))
            p = binding_term(binding.get("p"))
            o = binding_term(binding.get("o"))
            if not isinstance(s, Iri) or not isinstance(p, Iri) or o in (None, ""):
                continue
            local = p.local_name
            value = o.value if isinstance(o, Iri) else str(o)
            by_subject[s.value].setdefault(local, []).append(value)
            if local in ("name", "label") and s.value not in names:
                names[s.value] = value

        records = []
        for subject in sorted(by_subject):
            props = by_subject[subject]
            name = names.get(subject)
            if not name:
                continue
            geo = self._geo_of(props)
            mapped = apply_aliases(props, self.source_id, self.ds)
            records.append(SourceRecord(record_id=subject, name=name, geo=geo, properties=mapped))
        return order_records(records, query)

    @staticmethod
    def _geo_of(props: dict[str, list[str]]) -> Optional[Geo]:
        lat = next((props[k][0] for k in _LAT_NAMES if props.get(k)), None)
        lon = next((props[k][0] for k in _LON_NAMES if props.get(k)), None)
        try:
            if lat is not None and lon is not None:
                return Geo(float(lat), float(lon))
        except ValueError:
            pass
        return None
