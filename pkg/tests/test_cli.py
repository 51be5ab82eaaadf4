import json
from pathlib import Path

from kgvalidator.cli import EXIT_CONFIG, EXIT_FATAL, EXIT_OK, main

DATA = Path(__file__).parent.parent / "data" / "hotels"


def test_validate_writes_golden_report(tmp_path):
    out = tmp_path / "report.json"
    rc = main(["validate", "--config", str(DATA / "run.json"), "--output", str(out)])
    assert rc == EXIT_OK
    assert out.read_bytes() == (DATA / "expected_report.json").read_bytes()


def test_validate_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    rc = main(["validate", "--config", str(DATA / "run.json"), "--output", str(out), "--format", "csv"])
    assert rc == EXIT_OK
    lines = out.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "subject,confidence,valid"
    assert len(lines) == 51


def test_validate_weight_override_changes_scores(tmp_path):
    out = tmp_path / "report.json"
    rc = main(
        ["validate", "--config", str(DATA / "run.json"), "--weights", "0.8,0.1,0.1", "--output", str(out)]
    )
    assert rc == EXIT_OK
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["config"]["weights"] == [0.8, 0.1, 0.1]
    assert doc["config"]["normalizedWeights"] == [0.8, 0.1, 0.1]


def test_validate_threshold_override(tmp_path):
    out = tmp_path / "report.json"
    rc = main(["validate", "--config", str(DATA / "run.json"), "--threshold", "0.9", "--output", str(out)])
    assert rc == EXIT_OK
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["config"]["threshold"] == 0.9


def test_metrics_csv_flag(tmp_path):
    out = tmp_path / "report.json"
    metrics_csv = tmp_path / "metrics.csv"
    rc = main(
        [
            "validate",
            "--config", str(DATA / "run.json"),
            "--output", str(out),
            "--metrics-csv", str(metrics_csv),
        ]
    )
    assert rc == EXIT_OK
    assert metrics_csv.read_text(encoding="utf-8").startswith("property,precision,recall,f1")


def test_missing_config_is_config_error():
    assert main(["validate"]) == EXIT_CONFIG


def test_unreadable_config_is_config_error(tmp_path):
    assert main(["validate", "--config", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_bad_threshold_is_config_error():
    rc = main(["validate", "--config", str(DATA / "run.json"), "--threshold", "2.0"])
    assert rc == EXIT_CONFIG


def test_missing_input_file_is_fatal(tmp_path):
    config = {
        "input": {"turtle": "nope.ttl"},
        "domainSpec": str(DATA / "hotel.ds.json"),
        "sources": [{"sourceId": "a", "kind": "fixture", "endpoint": str(DATA / "places-alpha.json")}],
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    assert main(["validate", "--config", str(path)]) == EXIT_FATAL


def test_sparql_input_override(tmp_path):
    from stubserver import serve_json

    bindings = {
        "results": {
            "bindings": [
                {
                    "s": {"type": "uri", "value": "http://x/h1"},
                    "p": {"type": "uri", "value": "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"},
                    "o": {"type": "uri", "value": "http://schema.org/Hotel"},
                },
                {
                    "s": {"type": "uri", "value": "http://x/h1"},
                    "p": {"type": "uri", "value": "http://schema.org/name"},
                    "o": {"type": "literal", "value": "Hotel Alpenhof"},
                },
                {
                    "s": {"type": "uri", "value": "http://x/h1"},
                    "p": {"type": "uri", "value": "http://schema.org/latitude"},
                    "o": {"type": "literal", "value": "47.2692"},
                },
                {
                    "s": {"type": "uri", "value": "http://x/h1"},
                    "p": {"type": "uri", "value": "http://schema.org/longitude"},
                    "o": {"type": "literal", "value": "11.4041"},
                },
            ]
        }
    }
    config_doc = json.loads((DATA / "run.json").read_text(encoding="utf-8"))
    config_doc.pop("baseline")  # the hotel baseline has no labels for stub subjects
    config_doc["domainSpec"] = str(DATA / "hotel.ds.json")
    for source in config_doc["sources"]:
        source["endpoint"] = str(DATA / source["endpoint"])
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps(config_doc), encoding="utf-8")

    out = tmp_path / "report.json"
    with serve_json(bindings) as stub:
        rc = main(
            [
                "validate",
                "--config", str(config_path),
                "--sparql", stub.url,
                "--limit", "10",
                "--output", str(out),
            ]
        )
    assert rc == EXIT_OK
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["config"]["input"] == {"kind": "sparql", "endpoint": stub.url, "limit": 10}
    assert [i["subject"] for i in doc["instances"]] == ["http://x/h1"]


def test_unreachable_sparql_endpoint_is_fatal():
    rc = main(
        ["validate", "--config", str(DATA / "run.json"), "--sparql", "http://127.0.0.1:9/sparql"]
    )
    assert rc == EXIT_FATAL


def test_bad_bind_is_config_error(tmp_path):
    rc = main(["serve", "--config", str(DATA / "run.json"), "--bind", "no-port"])
    assert rc == EXIT_CONFIG


def test_stdout_output(capsys):
    rc = main(["validate", "--config", str(DATA / "run.json"), "--format", "csv"])
    assert rc == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("subject,confidence,valid")
