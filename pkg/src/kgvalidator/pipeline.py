"""End-to-end validation pipeline and report handling.

ingest -> project onto the DS -> match each instance in every source ->
score every populated property -> classify -> assemble an immutable report.

Reports serialize to canonical JSON: sorted keys, scores rounded to four
decimals, and no volatile fields (run id, timestamps, timings, worker
count), so two runs over the same inputs produce byte-identical files and
golden-file tests stay meaningful.  The volatile metadata is available in
the full (API) serialization under "meta".
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from .confidence import (
    InstanceScore,
    SourceEvidence,
    SourceRegistry,
    best_evidence_sim,
    instance_confidence,
    score_triple,
)
from .config import RunConfig
from .errors import ConfigError, ValidatorError
from .evaluation import LabelMap, evaluate_instances, load_baseline
from .mapping import SKIP_REASON_NO_MATCHING, extract_instances, populated_matching_count
from .matching import MatchResult, build_match_query, match_instance
from .model import Instance, KnowledgeGraph
from .sources.base import KnowledgeSource, open_source
from .sparql import fetch_sparql
from .turtle import parse_turtle, serialize_turtle

logger = logging.getLogger(__name__)

SCORE_DECIMALS = 4


def _round(x: float) -> float:
    return round(x, SCORE_DECIMALS)


@dataclass(frozen=True)
class ValidationReport:
    run_id: str
    config: RunConfig
    instances: tuple[InstanceScore, ...]
    skipped: tuple[tuple[str, str], ...]
    metrics: Optional[dict]
    source_errors: dict[str, int]
    started: str
    finished: str
    timing_ms: dict[str, float]
    rescore_version: int = 0

    def to_canonical_dict(self) -> dict:
        return {
            "config": self.config.echo_dict(),
            "instances": [_instance_dict(score) for score in self.instances],
            "skipped": [{"subject": s, "reason": r} for s, r in self.skipped],
            "metrics": _round_tree(self.metrics) if self.metrics is not None else None,
            "sourceErrors": dict(sorted(self.source_errors.items())),
        }

    def to_full_dict(self) -> dict:
        doc = self.to_canonical_dict()
        doc["meta"] = {
            "runId": self.run_id,
            "started": self.started,
            "finished": self.finished,
            "timingMs": {k: round(v, 1) for k, v in self.timing_ms.items()},
            "rescoreVersion": self.rescore_version,
        }
        return doc


def _instance_dict(score: InstanceScore) -> dict:
    return {
        "subject": score.subject,
        "confidence": _round(score.confidence),
        "valid": score.valid,
        "threshold": _round(score.threshold),
        "matchErrors": dict(sorted(score.match_errors.items())),
        "triples": [
            {
                "property": t.property,
                "kgValue": t.kg_value,
                "unweighted": _round(t.unweighted),
                "weighted": _round(t.weighted),
                "perSource": [
                    {
                        "sourceId": e.source_id,
                        "value": e.value,
                        "sim": _round(e.sim),
                        "matched": e.matched,
                        "error": e.error,
                    }
                    for e in t.per_source
                ],
            }
            for t in score.triples
        ],
    }


def _round_tree(node):
    if isinstance(node, float):
        return _round(node)
    if isinstance(node, dict):
        return {k: _round_tree(v) for k, v in node.items()}
    if isinstance(node, list):
        return [_round_tree(v) for v in node]
    return node


def canonical_json(report: ValidationReport) -> str:
    return json.dumps(report.to_canonical_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def csv_summary(report: ValidationReport) -> str:
    lines = ["subject,confidence,valid"]
    for score in report.instances:
        lines.append(f"{score.subject},{_round(score.confidence)},{str(score.valid).lower()}")
    return "\n".join(lines) + "\n"


def write_report(report: ValidationReport, path: Union[str, Path], format: str = "json") -> Path:
    """Persist a report as canonical JSON or a CSV summary."""
    path = Path(path)
    if format == "json":
        path.write_text(canonical_json(report), encoding="utf-8")
    elif format in ("csv", "csv-summary"):
        path.write_text(csv_summary(report), encoding="utf-8")
    else:
        raise ConfigError(f"unknown report format: {format!r}")
    return path


def _ingest(config: RunConfig) -> KnowledgeGraph:
    if config.turtle_path is not None:
        try:
            text = config.turtle_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidatorError(f"cannot read input {config.turtle_path}: {exc}") from exc
        return parse_turtle(text)

    # Endpoint fetches are stored as local Turtle snapshots when a cache dir
    # is configured, so re-runs (and flaky endpoints) cost one fetch total.
    cache_path = None
    if config.cache_dir is not None:
        key = hashlib.sha256(
            f"{config.sparql.endpoint}|{config.ds.name}|{config.sparql.limit}".encode("utf-8")
        ).hexdigest()[:24]
        cache_path = Path(config.cache_dir) / f"sparql-input-{key}.ttl"
        if cache_path.exists():
            try:
                return parse_turtle(cache_path.read_text(encoding="utf-8"), origin="sparql-endpoint")
            except (OSError, ValidatorError) as exc:
                logger.warning("discarding unreadable input snapshot %s: %s", cache_path, exc)

    kg = fetch_sparql(config.sparql.endpoint, config.ds, config.sparql.limit)
    if cache_path is not None:
        try:
            cache_path.parent.mkdir(parents=True, exist_ok=True)
            tmp = cache_path.with_suffix(".tmp")
            tmp.write_text(serialize_turtle(kg), encoding="utf-8")
            os.replace(tmp, cache_path)
        except OSError as exc:
            logger.warning("input snapshot write failed for %s: %s", cache_path, exc)
    return kg


def _validate_one(
    instance: Instance,
    config: RunConfig,
    sources: list[KnowledgeSource],
    registry: SourceRegistry,
    similarity_map,
    threshold: float,
):
    """Score one instance; returns ("scored", InstanceScore) or ("skipped", ...)."""
    ds = config.ds
    if instance.first_value("name") is None or populated_matching_count(instance, ds) < 2:
        return "skipped", (instance.id.value, SKIP_REASON_NO_MATCHING)

    query = build_match_query(instance, ds, radius_m=config.radius_m, similarity_map=similarity_map)
    results: list[MatchResult] = [match_instance(query, source, similarity_map) for source in sources]
    match_errors = {r.source_id: r.error for r in results if r.error}

    triples = []
    for prop in ds.attribute_properties:
        kg_values = instance.attributes.get(prop)
        if not kg_values:
            continue
        evidences = []
        for result in results:
            if result.matched and result.candidate is not None:
                values = result.candidate.values(prop)
                if values:
                    sim, best_value = best_evidence_sim(kg_values, values, similarity_map[prop])
                    evidences.append(
                        SourceEvidence(result.source_id, best_value, sim, matched=True)
                    )
                else:
                    evidences.append(SourceEvidence(result.source_id, None, 0.0, matched=True))
            else:
                evidences.append(
                    SourceEvidence(result.source_id, None, 0.0, matched=False, error=result.error)
                )
        triples.append(score_triple(instance.id.value, prop, kg_values, evidences, registry))

    if not triples:
        return "skipped", (instance.id.value, "empty attribute space")
    return "scored", instance_confidence(triples, threshold, instance.id.value, match_errors)


def validate_kg(config: RunConfig, labels: Optional[LabelMap] = None) -> ValidationReport:
    """Run the full validation pipeline.

    Ingestion and configuration problems raise; per-source and per-instance
    failures are recorded in the report instead of aborting the run.
    """
    started = datetime.now(timezone.utc).isoformat()
    timing: dict[str, float] = {}

    t0 = time.perf_counter()
    kg = _ingest(config)
    timing["ingest"] = (time.perf_counter() - t0) * 1000

    t0 = time.perf_counter()
    instances, excluded = extract_instances(kg, config.ds)
    timing["extract"] = (time.perf_counter() - t0) * 1000

    sources = [open_source(handle, config.ds) for handle in config.sources]
    registry = SourceRegistry.create([h.source_id for h in config.sources], config.weights)
    similarity_map = config.resolved_similarity()

    if labels is None and config.baseline_path is not None:
        labels = load_baseline(config.baseline_path)

    t0 = time.perf_counter()

    def worker(instance):
        return _validate_one(instance, config, sources, registry, similarity_map, config.threshold)

    if config.effective_concurrency > 1 and len(instances) > 1:
        with ThreadPoolExecutor(max_workers=config.effective_concurrency) as pool:
            outcomes = list(pool.map(worker, instances))
    else:
        outcomes = [worker(instance) for instance in instances]
    timing["validate"] = (time.perf_counter() - t0) * 1000

    scored: list[InstanceScore] = []
    skipped: list[tuple[str, str]] = list(excluded)
    source_errors: dict[str, int] = {}
    for kind, payload in outcomes:
        if kind == "scored":
            scored.append(payload)
            for source_id in payload.match_errors:
                source_errors[source_id] = source_errors.get(source_id, 0) + 1
        else:
            skipped.append(payload)
    skipped.sort(key=lambda pair: pair[0])

    metrics = None
    if labels:
        t0 = time.perf_counter()
        metrics = evaluate_instances(scored, labels, config.threshold)
        timing["evaluate"] = (time.perf_counter() - t0) * 1000

    return ValidationReport(
        run_id=str(uuid.uuid4()),
        config=config,
        instances=tuple(scored),
        skipped=tuple(skipped),
        metrics=metrics,
        source_errors=source_errors,
        started=started,
        finished=datetime.now(timezone.utc).isoformat(),
        timing_ms=timing,
        rescore_version=0,
    )


def rescore_report(
    report: ValidationReport,
    weights: Optional[list[float]] = None,
    threshold: Optional[float] = None,
    labels: Optional[LabelMap] = None,
) -> ValidationReport:
    """Recompute scores from the report's stored evidence.

    Weights and threshold only enter the aggregation steps, so no source is
    queried again; the result equals a full re-run with the new settings.
    """
    config = report.config.with_overrides(weights=weights, threshold=threshold)
    registry = SourceRegistry.create([h.source_id for h in config.sources], config.weights)

    rescored = []
    for score in report.instances:
        triples = [
            score_triple(t.subject, t.property, [t.kg_value], t.per_source, registry)
            for t in score.triples
        ]
        rescored.append(
            instance_confidence(triples, config.threshold, score.subject, score.match_errors)
        )

    # Metrics depend on the threshold, so they are recomputed when labels are
    # available and dropped otherwise; stale numbers would be worse than none.
    metrics = evaluate_instances(rescored, labels, config.threshold) if labels else None

    return replace(
        report,
        config=config,
        instances=tuple(rescored),
        metrics=metrics,
        rescore_version=report.rescore_version + 1,
        finished=datetime.now(timezone.utc).isoformat(),
    )
