"""HTTP API consumed by the web UI (and anything else that wants JSON).

One validation job runs at a time; submissions while a job is queued or
running are rejected with 409.  Finished reports stay in memory and can be
rescored with new weights or a new threshold, which reuses the stored
evidence instead of querying the sources again.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .config import RunConfig, config_from_dict
from .errors import ConfigError, ValidatorError
from .evaluation import LabelMap, load_baseline
from .pipeline import ValidationReport, rescore_report, validate_kg


class RescoreRequest(BaseModel):
    weights: Optional[list[float]] = None
    threshold: Optional[float] = None


class _Job:
    def __init__(self, run_id: str, config: RunConfig):
        self.run_id = run_id
        self.config = config
        self.status = "queued"  # queued | running | done | error
        self.report: Optional[ValidationReport] = None
        self.labels: Optional[LabelMap] = None
        self.error: Optional[str] = None


class RunStore:
    """Jobs by id, plus the one-at-a-time execution slot."""

    def __init__(self):
        self.jobs: dict[str, _Job] = {}
        self.lock = threading.Lock()

    def busy(self) -> bool:
        return any(job.status in ("queued", "running") for job in self.jobs.values())


def create_app(
    base_config: Optional[RunConfig] = None,
    config_dir: Optional[Path] = None,
    web_dir: Optional[Path] = None,
) -> FastAPI:
    """Build the service.

    base_config supplies defaults merged under every submitted run config;
    config_dir anchors relative paths in submitted configs and is scanned
    for available domain-spec files.
    """
    app = FastAPI(title="kgvalidator")
    store = RunStore()
    app.state.store = store
    base_dir = Path(config_dir) if config_dir else Path.cwd()

    def _job_or_404(run_id: str) -> _Job:
        job = store.jobs.get(run_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown run id {run_id}")
        return job

    def _execute(job: _Job):
        job.status = "running"
        try:
            if job.config.baseline_path is not None:
                job.labels = load_baseline(job.config.baseline_path)
            job.report = validate_kg(job.config, labels=job.labels)
            job.status = "done"
        except Exception as exc:  # surfaced via GET /runs/{id}
            job.error = str(exc)
            job.status = "error"

    @app.post("/runs", status_code=202)
    def submit_run(config: Optional[dict] = None):
        with store.lock:
            if store.busy():
                raise HTTPException(status_code=409, detail="a validation job is already running")
            try:
                run_config = _merge_config(base_config, config, base_dir)
            except (ConfigError, ValidatorError, KeyError, TypeError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            job = _Job(str(uuid.uuid4()), run_config)
            store.jobs[job.run_id] = job
            thread = threading.Thread(target=_execute, args=(job,), daemon=True)
            thread.start()
        return {"runId": job.run_id}

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        job = _job_or_404(run_id)
        body = {"runId": job.run_id, "status": job.status}
        if job.status == "done":
            body["report"] = job.report.to_full_dict()
            body["rescoreVersion"] = job.report.rescore_version
        if job.status == "error":
            body["error"] = job.error
        return body

    @app.post("/runs/{run_id}/rescore")
    def rescore(run_id: str, request: RescoreRequest):
        job = _job_or_404(run_id)
        if job.status != "done":
            raise HTTPException(status_code=400, detail=f"run is {job.status}, not done")
        if request.weights is not None:
            if len(request.weights) != len(job.config.sources):
                raise HTTPException(status_code=400, detail="one weight per source is required")
            if any(w < 0 for w in request.weights):
                raise HTTPException(status_code=400, detail="weights must be non-negative")
            if sum(request.weights) <= 0:
                raise HTTPException(status_code=400, detail="weight sum must be positive")
        if request.threshold is not None and not 0.0 <= request.threshold <= 1.0:
            raise HTTPException(status_code=400, detail="threshold must be within [0, 1]")
        with store.lock:
            job.report = rescore_report(
                job.report, weights=request.weights, threshold=request.threshold, labels=job.labels
            )
        return {
            "runId": job.run_id,
            "rescoreVersion": job.report.rescore_version,
            "report": job.report.to_full_dict(),
        }

    @app.get("/runs/{run_id}/metrics")
    def get_metrics(run_id: str):
        job = _job_or_404(run_id)
        if job.status != "done" or job.report.metrics is None:
            raise HTTPException(status_code=404, detail="no metrics for this run (baseline missing?)")
        return job.report.metrics

    @app.get("/sources")
    def get_sources():
        if base_config is None:
            return []
        return [handle.to_public_dict() for handle in base_config.sources]

    @app.get("/domain-specs")
    def get_domain_specs():
        specs = []
        if base_config is not None:
            specs.append(base_config.ds.to_dict())
        seen = {spec["name"] for spec in specs}
        for path in sorted(base_dir.glob("*.ds.json")):
            try:
                from .model import load_domain_spec

                ds = load_domain_spec(path)
            except ValidatorError:
                continue
            if ds.name not in seen:
                seen.add(ds.name)
                specs.append(ds.to_dict())
        return specs

    if web_dir and Path(web_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(web_dir), html=True), name="webui")

    return app


def _merge_config(base: Optional[RunConfig], overrides: Optional[dict], base_dir: Path) -> RunConfig:
    """Overlay a submitted config document onto the server's base config."""
    if overrides:
        if base is None:
            return config_from_dict(overrides, base_dir)
        merged = _config_as_dict_shallow(base)
        merged.update(overrides)
        return config_from_dict(merged, base_dir)
    if base is None:
        raise ConfigError("no run configuration: the server has no base config")
    return base


def _config_as_dict_shallow(config: RunConfig) -> dict:
    doc: dict = {
        "domainSpec": config.ds.to_dict(),
        "sources": [
            {**h.to_public_dict(), **({"cacheDir": h.cache_dir} if h.cache_dir else {})}
            for h in config.sources
        ],
        "threshold": config.threshold,
        "radiusM": config.radius_m,
        "similarity": {
            p: {"kind": f.kind, "normalizer": f.normalizer} for p, f in config.similarity.items()
        },
        "concurrency": config.concurrency,
    }
    if config.weights is not None:
        doc["weights"] = list(config.weights)
    if config.turtle_path is not None:
        doc["input"] = {"turtle": str(config.turtle_path)}
    else:
        doc["input"] = {"sparql": {"endpoint": config.sparql.endpoint, "limit": config.sparql.limit}}
    if config.baseline_path is not None:
        doc["baseline"] = str(config.baseline_path)
    if config.cache_dir is not None:
        doc["cacheDir"] = str(config.cache_dir)
    return doc
