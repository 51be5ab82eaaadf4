import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kgvalidator.model import DomainSpecification


@pytest.fixture
def hotel_ds() -> DomainSpecification:
    return DomainSpecification(
        name="hotel",
        target_type="Hotel",
        properties=["name", "address", "phone", "geo"],
        matching_properties=["name", "geo"],
        aliases={
            "kg": {"telephone": "phone"},
            "places-beta": {"street_address": "address", "telephone": "phone"},
            "places-gamma": {"phone_number": "phone"},
        },
    )


@pytest.fixture
def person_ds() -> DomainSpecification:
    return DomainSpecification(
        name="person",
        target_type="Person",
        properties=["name", "birthYear"],
        matching_properties=["name", "birthYear"],
    )


def write_fixture(path: Path, source_id: str, records: list[dict]) -> Path:
    path.write_text(json.dumps({"sourceId": source_id, "records": records}), encoding="utf-8")
    return path


@pytest.fixture
def fixture_writer(tmp_path):
    def _write(source_id: str, records: list[dict], filename: str | None = None) -> Path:
        return write_fixture(tmp_path / (filename or f"{source_id}.json"), source_id, records)

    return _write
