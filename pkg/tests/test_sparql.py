import pytest

from kgvalidator.errors import NetworkError
from kgvalidator.model import Iri
from kgvalidator.sparql import build_instance_query, fetch_sparql

from stubserver import serve_json

BINDINGS = {
    "head": {"vars": ["s", "p", "o"]},
    "results": {
        "bindings": [
            {
                "s": {"type": "uri", "value": "http://x/p1"},
                "p": {"type": "uri", "value": "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"},
                "o": {"type": "uri", "value": "http://schema.org/Person"},
            },
            {
                "s": {"type": "uri", "value": "http://x/p1"},
                "p": {"type": "uri", "value": "http://schema.org/name"},
                "o": {"type": "literal", "value": "Marie Curie", "xml:lang": "en"},
            },
            {
                "s": {"type": "uri", "value": "http://x/p2"},
                "p": {"type": "uri", "value": "http://schema.org/name"},
                "o": {"type": "literal", "value": "Pierre Curie"},
            },
            {
                "s": {"type": "uri", "value": "http://x/p3"},
                "p": {"type": "uri", "value": "http://schema.org/name"},
                "o": {"type": "literal", "value": "Irene Joliot-Curie"},
            },
        ]
    },
}


def test_limit_must_be_positive(person_ds):
    with pytest.raises(ValueError):
        fetch_sparql("http://127.0.0.1:9", person_ds, limit=0)


def test_bindings_become_triples(person_ds):
    with serve_json(BINDINGS) as stub:
        kg = fetch_sparql(stub.url, person_ds, limit=10)
    assert kg.origin == "sparql-endpoint"
    assert len(kg.triples) == 4
    assert {s.value for s in kg.subjects()} == {"http://x/p1", "http://x/p2", "http://x/p3"}
    named = [t for t in kg.triples if t.subject == Iri("http://x/p1") and t.object == "Marie Curie"]
    assert len(named) == 1


def test_query_is_sent_and_type_constrained(person_ds):
    with serve_json(BINDINGS) as stub:
        fetch_sparql(stub.url, person_ds, limit=7)
        body = stub.requests[0]["body"]
    assert "LIMIT 7" in body.replace("+", " ")
    assert "Person" in body


def test_unreachable_host_is_network_error(person_ds):
    with pytest.raises(NetworkError):
        fetch_sparql("http://127.0.0.1:9/sparql", person_ds, limit=5, timeout_s=1.0)


def test_duplicate_bindings_deduplicated(person_ds):
    doc = {
        "results": {
            "bindings": [BINDINGS["results"]["bindings"][1], BINDINGS["results"]["bindings"][1]]
        }
    }
    with serve_json(doc) as stub:
        kg = fetch_sparql(stub.url, person_ds, limit=10)
    assert len(kg.triples) == 1


def test_build_query_mentions_properties_projection(person_ds):
    query = build_instance_query(person_ds, limit=42)
    assert "LIMIT 42" in query
    assert "?s ?p ?o" in query


def test_endpoint_input_snapshot_cached_locally(tmp_path, person_ds):
    """With a cache dir, the fetched graph is stored as a local Turtle
    snapshot and re-runs skip the endpoint entirely."""
    import json as json_module

    from kgvalidator.config import config_from_dict
    from kgvalidator.pipeline import canonical_json, validate_kg

    (tmp_path / "src.json").write_text(
        json_module.dumps(
            {
                "sourceId": "biodb-a",
                "records": [
                    {"id": "r1", "name": "Marie Curie", "properties": {"birthYear": ["1867"]}}
                ],
            }
        ),
        encoding="utf-8",
    )
    bindings = dict(BINDINGS)
    bindings["results"] = {
        "bindings": BINDINGS["results"]["bindings"][:2]
        + [
            {
                "s": {"type": "uri", "value": "http://x/p1"},
                "p": {"type": "uri", "value": "http://example.org/vocab/birthYear"},
                "o": {"type": "literal", "value": "1867"},
            }
        ]
    }
    with serve_json(bindings) as stub:
        config = config_from_dict(
            {
                "input": {"sparql": {"endpoint": stub.url, "limit": 10}},
                "domainSpec": {
                    "name": "person",
                    "targetType": "Person",
                    "properties": ["name", "birthYear"],
                    "matchingProperties": ["name", "birthYear"],
                },
                "sources": [{"sourceId": "biodb-a", "kind": "fixture", "endpoint": "src.json"}],
                "cacheDir": "cache",
            },
            base_dir=tmp_path,
        )
        first = validate_kg(config)
        second = validate_kg(config)
        endpoint_hits = len(stub.requests)

    assert endpoint_hits == 1
    assert canonical_json(first) == canonical_json(second)
    snapshots = list((tmp_path / "cache").glob("sparql-input-*.ttl"))
    assert len(snapshots) == 1
