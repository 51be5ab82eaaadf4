"""Ingestion from a SPARQL endpoint (SPARQL Protocol, JSON results)."""

from __future__ import annotations

from typing import Iterator, Optional

import requests

from .errors import EndpointTimeoutError, NetworkError
from .model import DomainSpecification, Iri, KnowledgeGraph, Triple

DEFAULT_TIMEOUT_S = 30.0

_RESULT_MIME = "application/sparql-results+json"


def _local_name_filter(var: str, local: str) -> str:
    return f'(STRENDS(STR(?{var}), "/{local}") || STRENDS(STR(?{var}), "#{local}"))'


def build_instance_query(ds: DomainSpecification, limit: int) -> str:
    """A type-constrained query for all triples of up to `limit` subjects.

    The target type is matched by local name, since a DS names types and
    properties without namespaces; the property projection happens client
    side in extract_instances.
    """
    return (
        "SELECT ?s ?p ?o WHERE {\n"
        "  { SELECT DISTINCT ?s WHERE {\n"
        "      ?s a ?type .\n"
        f"      FILTER {_local_name_filter('type', ds.target_type)}\n"
        f"    }} ORDER BY ?s LIMIT {limit} }}\n"
        "  ?s ?p ?o .\n"
        "}"
    )


def parse_sparql_json(doc: dict) -> Iterator[dict[str, dict]]:
    """Yield raw binding dicts {var: {type, value, ...}} from a result doc."""
    bindings = doc.get("results", {}).get("bindings", [])
    for binding in bindings:
        yield binding


def binding_term(term: Optional[dict]):
    """Convert one SPARQL-JSON term to an Iri or literal string, or None."""
    if not term:
        return None
    if term.get("type") == "uri":
        return Iri(term["value"])
    return str(term.get("value", ""))


def run_select(endpoint: str, query: str, timeout_s: float = DEFAULT_TIMEOUT_S) -> dict:
    """POST a SELECT query and return the parsed SPARQL-JSON document."""
    try:
        response = requests.post(
            endpoint,
            data={"query": query},
            headers={"Accept": _RESULT_MIME},
            timeout=timeout_s,
        )
        response.raise_for_status()
        return response.json()
    except requests.exceptions.Timeout as exc:
        raise EndpointTimeoutError(f"endpoint {endpoint} timed out") from exc
    except requests.exceptions.RequestException as exc:
        raise NetworkError(str(exc)) from exc
    except ValueError as exc:
        raise NetworkError(f"endpoint {endpoint} returned invalid JSON: {exc}") from exc


def fetch_sparql(
    endpoint: str,
    ds: DomainSpecification,
    limit: int,
    timeout_s: float = DEFAULT_TIMEOUT_S,
) -> KnowledgeGraph:
    """Fetch up to `limit` instances of the DS target type as a graph.

    Raises EndpointTimeoutError when the endpoint times out (retry with a
    smaller limit) and NetworkError for other transport failures.
    """
    if limit <= 0:
        raise ValueError("limit must be > 0")
    doc = run_select(endpoint, build_instance_query(ds, limit), timeout_s=timeout_s)

    triples = []
    for binding in parse_sparql_json(doc):
        s = binding_term(binding.get("s"))
        p = binding_term(binding.get("p"))
        o = binding_term(binding.get("o"))
        if not isinstance(s, Iri) or not isinstance(p, Iri) or o in (None, ""):
            continue
        triples.append(Triple(subject=s, predicate=p, object=o))
    return KnowledgeGraph.from_triples(triples, origin="sparql-endpoint")
