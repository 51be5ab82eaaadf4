"""Run configuration: what to validate, against which sources, and how."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Union

from .confidence import DEFAULT_THRESHOLD, normalize_weights
from .errors import ConfigError
from .matching import DEFAULT_RADIUS_M
from .model import DomainSpecification, load_domain_spec
from .normalize import NORMALIZER_KINDS
from .similarity import SIMILARITY_KINDS, SimilarityFunction, default_similarity
from .sources.base import KnowledgeSourceHandle


@dataclass(frozen=True)
class SparqlInput:
    endpoint: str
    limit: int = 1000


@dataclass(frozen=True)
class RunConfig:
    ds: DomainSpecification
    sources: list[KnowledgeSourceHandle]
    turtle_path: Optional[Path] = None
    sparql: Optional[SparqlInput] = None
    weights: Optional[list[float]] = None
    threshold: float = DEFAULT_THRESHOLD
    radius_m: float = DEFAULT_RADIUS_M
    similarity: dict[str, SimilarityFunction] = field(default_factory=dict)
    concurrency: int = 0  # 0: use the hardware thread count
    cache_dir: Optional[Path] = None
    baseline_path: Optional[Path] = None

    def __post_init__(self):
        if (self.turtle_path is None) == (self.sparql is None):
            raise ConfigError("exactly one input is required: a Turtle file or a SPARQL endpoint")
        if not self.sources:
            raise ConfigError("at least one source is required")
        ids = [h.source_id for h in self.sources]
        if len(set(ids)) != len(ids):
            raise ConfigError("source ids must be unique")
        if self.weights is not None and len(self.weights) != len(self.sources):
            raise ConfigError("one weight per source is required")
        if self.weights is not None and any(w < 0 for w in self.weights):
            raise ConfigError("weights must be non-negative")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError("threshold must be within [0, 1]")
        if self.radius_m <= 0:
            raise ConfigError("radius must be > 0")
        if self.concurrency < 0:
            raise ConfigError("concurrency must be >= 0")

    @property
    def effective_concurrency(self) -> int:
        return self.concurrency if self.concurrency > 0 else (os.cpu_count() or 4)

    def with_overrides(
        self, weights: Optional[list[float]] = None, threshold: Optional[float] = None
    ) -> "RunConfig":
        changes = {}
        if weights is not None:
            changes["weights"] = list(weights)
        if threshold is not None:
            changes["threshold"] = threshold
        return replace(self, **changes) if changes else self

    def echo_dict(self) -> dict:
        """Deterministic, path-free config echo for the canonical report."""
        if self.turtle_path is not None:
            input_echo = {"kind": "turtle", "file": self.turtle_path.name}
        else:
            input_echo = {"kind": "sparql", "endpoint": self.sparql.endpoint, "limit": self.sparql.limit}
        return {
            "input": input_echo,
            "domainSpec": {
                "name": self.ds.name,
                "targetType": self.ds.target_type,
                "properties": list(self.ds.properties),
                "matchingProperties": list(self.ds.matching_properties),
            },
            "sources": [h.source_id for h in self.sources],
            "weights": list(self.weights) if self.weights is not None else None,
            "normalizedWeights": [
                round(w, 4) for w in normalize_weights(self.weights, m=len(self.sources))
            ],
            "threshold": self.threshold,
            "radiusM": self.radius_m,
            "similarity": {
                prop: {"kind": f.kind, "normalizer": f.normalizer}
                for prop, f in sorted(self.resolved_similarity().items())
            },
        }

    def resolved_similarity(self) -> dict[str, SimilarityFunction]:
        functions = {}
        for prop in self.ds.attribute_properties:
            functions[prop] = self.similarity.get(prop, default_similarity(prop))
        return functions


def _parse_similarity(doc: dict) -> dict[str, SimilarityFunction]:
    functions = {}
    for prop, spec in doc.items():
        kind = spec.get("kind", "levenshtein-normalized")
        normalizer = spec.get("normalizer", default_similarity(prop).normalizer)
        if kind not in SIMILARITY_KINDS:
            raise ConfigError(f"similarity for {prop!r}: unknown kind {kind!r}")
        if normalizer not in NORMALIZER_KINDS:
            raise ConfigError(f"similarity for {prop!r}: unknown normalizer {normalizer!r}")
        functions[prop] = SimilarityFunction(kind, normalizer)
    return functions


def config_from_dict(doc: dict, base_dir: Union[str, Path] = ".") -> RunConfig:
    """Build a RunConfig from a config document.

    Relative paths are resolved against base_dir (the config file's
    directory).  The domain spec may be a path or an inline object.
    """
    base = Path(base_dir)

    def resolve(p) -> Path:
        path = Path(p)
        return path if path.is_absolute() else base / path

    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")

    ds_ref = doc.get("domainSpec")
    if ds_ref is None:
        raise ConfigError("config needs a domainSpec (path or inline object)")
    ds = DomainSpecification.from_dict(ds_ref) if isinstance(ds_ref, dict) else load_domain_spec(resolve(ds_ref))

    raw_sources = doc.get("sources") or []
    global_cache = doc.get("cacheDir")
    handles = []
    for raw in raw_sources:
        raw = dict(raw)
        if raw.get("kind") == "fixture":
            raw["endpoint"] = str(resolve(raw.get("endpoint", "")))
        elif "cacheDir" not in raw and global_cache:
            raw["cacheDir"] = str(resolve(global_cache))
        if raw.get("cacheDir"):
            raw["cacheDir"] = str(resolve(raw["cacheDir"]))
        handles.append(KnowledgeSourceHandle.from_dict(raw))

    input_doc = doc.get("input") or {}
    turtle_path = resolve(input_doc["turtle"]) if "turtle" in input_doc else None
    sparql = None
    if "sparql" in input_doc:
        sp = input_doc["sparql"]
        sparql = SparqlInput(endpoint=sp["endpoint"], limit=int(sp.get("limit", 1000)))

    weights = doc.get("weights")
    try:
        return RunConfig(
            ds=ds,
            sources=handles,
            turtle_path=turtle_path,
            sparql=sparql,
            weights=[float(w) for w in weights] if weights is not None else None,
            threshold=float(doc.get("threshold", DEFAULT_THRESHOLD)),
            radius_m=float(doc.get("radiusM", DEFAULT_RADIUS_M)),
            similarity=_parse_similarity(doc.get("similarity", {})),
            concurrency=int(doc.get("concurrency", 0)),
            cache_dir=resolve(global_cache) if global_cache else None,
            baseline_path=resolve(doc["baseline"]) if doc.get("baseline") else None,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc


def load_run_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    env_cache = os.environ.get("VALIDATOR_CACHE_DIR")
    if env_cache and isinstance(doc, dict) and not doc.get("cacheDir"):
        doc["cacheDir"] = env_cache
    return config_from_dict(doc, base_dir=path.parent)
