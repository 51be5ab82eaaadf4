"""Command-line interface.

    kgvalidator validate --input hotels.ttl --ds hotel.ds.json ...
    kgvalidator serve --config run.json --bind 127.0.0.1:8040

Exit codes: 0 success, 1 fatal runtime error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from .config import RunConfig, SparqlInput, load_run_config
from .errors import ConfigError, ValidatorError
from .evaluation import write_metrics_csv
from .model import load_domain_spec
from .pipeline import canonical_json, validate_kg, write_report

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_CONFIG = 2

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgvalidator", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="validate a knowledge graph against the sources")
    validate.add_argument("--input", help="Turtle file to validate")
    validate.add_argument("--sparql", help="SPARQL endpoint to fetch the graph from")
    validate.add_argument("--limit", type=int, default=1000, help="instance limit for SPARQL input")
    validate.add_argument("--ds", help="domain specification JSON file")
    validate.add_argument("--config", help="run configuration JSON file")
    validate.add_argument("--weights", help="comma-separated raw source weights")
    validate.add_argument("--threshold", type=float, help="validity threshold (default 0.5)")
    validate.add_argument("--radius", type=float, help="geo matching radius in meters (default 500)")
    validate.add_argument("--baseline", help="baseline CSV for evaluation metrics")
    validate.add_argument("--output", help="report output path (default: stdout)")
    validate.add_argument("--format", choices=["json", "csv"], default="json")
    validate.add_argument("--concurrency", type=int, help="worker count (default: hardware threads)")
    validate.add_argument("--cache-dir", help="cache directory for HTTP source responses")
    validate.add_argument("--metrics-csv", help="also write per-property metrics to this CSV file")

    serve = sub.add_parser("serve", help="run the validation HTTP service")
    serve.add_argument("--config", required=True, help="run configuration JSON file")
    serve.add_argument("--bind", default="127.0.0.1:8040", help="address:port to listen on")
    serve.add_argument("--web-dir", help="directory of built web UI assets to serve")
    return parser


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    from dataclasses import replace

    changes = {}
    if args.input:
        changes["turtle_path"] = Path(args.input)
        changes["sparql"] = None
    if args.sparql:
        changes["sparql"] = SparqlInput(args.sparql, args.limit)
        changes["turtle_path"] = None
    if args.ds:
        changes["ds"] = load_domain_spec(args.ds)
    if args.weights:
        try:
            changes["weights"] = [float(w) for w in args.weights.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --weights value: {exc}") from exc
    if args.threshold is not None:
        changes["threshold"] = args.threshold
    if args.radius is not None:
        changes["radius_m"] = args.radius
    if args.baseline:
        changes["baseline_path"] = Path(args.baseline)
    if args.concurrency is not None:
        changes["concurrency"] = args.concurrency
    if args.cache_dir:
        changes["cache_dir"] = Path(args.cache_dir)
    return replace(config, **changes) if changes else config


def _cmd_validate(args) -> int:
    if not args.config:
        # The source handles live in the config file; flags only override it.
        raise ConfigError("--config is required (it lists the knowledge sources)")
    config = _apply_overrides(load_run_config(args.config), args)

    report = validate_kg(config)
    if args.output:
        write_report(report, args.output, format=args.format)
        logger.info("report written to %s", args.output)
    else:
        if args.format == "json":
            sys.stdout.write(canonical_json(report))
        else:
            from .pipeline import csv_summary

            sys.stdout.write(csv_summary(report))
    if args.metrics_csv:
        if report.metrics is None:
            raise ConfigError("--metrics-csv requires --baseline (or a baseline in the config)")
        write_metrics_csv(report.metrics, args.metrics_csv)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config_path = Path(args.config)
    config = load_run_config(config_path)
    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        raise ConfigError(f"--bind must look like host:port, got {args.bind!r}")
    web_dir = Path(args.web_dir) if args.web_dir else None
    app = create_app(base_config=config, config_dir=config_path.parent, web_dir=web_dir)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        return _cmd_serve(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
