"""Validate knowledge-graph triples and instances against weighted sources.

The validator matches each instance of an input graph across a set of
external knowledge sources, compares attribute values with syntactic
similarity, and aggregates the per-source agreement into weighted triple
and instance confidence scores.
"""

from .confidence import (
    DEFAULT_THRESHOLD,
    InstanceScore,
    SourceEvidence,
    SourceRegistry,
    TripleScore,
    instance_confidence,
    normalize_weights,
    triple_confidence,
    triple_confidence_unweighted,
)
from .config import RunConfig, config_from_dict, load_run_config
from .errors import ValidatorError
from .evaluation import classify_triple, evaluate_instances, load_baseline, metrics, recall_by_source
from .geo import haversine_m
from .mapping import apply_aliases, extract_instances
from .matching import MatchQuery, MatchResult, build_match_query, match_instance
from .model import (
    DomainSpecification,
    Geo,
    Instance,
    Iri,
    KnowledgeGraph,
    Triple,
    load_domain_spec,
)
from .normalize import normalize
from .pipeline import ValidationReport, canonical_json, rescore_report, validate_kg, write_report
from .similarity import SimilarityFunction, levenshtein_distance, similarity
from .sparql import fetch_sparql
from .sources import KnowledgeSourceHandle, SourceRecord, load_fixture, open_source
from .turtle import parse_turtle, serialize_turtle

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_THRESHOLD",
    "DomainSpecification",
    "Geo",
    "Instance",
    "InstanceScore",
    "Iri",
    "KnowledgeGraph",
    "KnowledgeSourceHandle",
    "MatchQuery",
    "MatchResult",
    "RunConfig",
    "SimilarityFunction",
    "SourceEvidence",
    "SourceRecord",
    "SourceRegistry",
    "Triple",
    "TripleScore",
    "ValidationReport",
    "ValidatorError",
    "apply_aliases",
    "build_match_query",
    "canonical_json",
    "classify_triple",
    "config_from_dict",
    "evaluate_instances",
    "extract_instances",
    "fetch_sparql",
    "haversine_m",
    "instance_confidence",
    "levenshtein_distance",
    "load_baseline",
    "load_domain_spec",
    "load_fixture",
    "load_run_config",
    "match_instance",
    "metrics",
    "normalize",
    "normalize_weights",
    "open_source",
    "parse_turtle",
    "recall_by_source",
    "rescore_report",
    "serialize_turtle",
    "similarity",
    "triple_confidence",
    "triple_confidence_unweighted",
    "validate_kg",
    "write_report",
]
