"""On-disk response caching for source connectors.

Each (source, query) pair maps to one JSON file keyed by a digest of the
canonical query serialization.  Re-runs against the same sources then cost
no network traffic, which also freezes a live source into a local snapshot.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import TYPE_CHECKING

from .base import KnowledgeSource, SourceRecord

if TYPE_CHECKING:
    from ..matching import MatchQuery

logger = logging.getLogger(__name__)


def query_cache_key(source_id: str, query: "MatchQuery") -> str:
    canonical = json.dumps(
        {
            "sourceId": source_id,
            "name": query.name,
            "geo": list(query.geo) if query.geo else None,
            "radiusM": query.radius_m,
            "extra": dict(sorted(query.extra.items())),
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class CachedSource:
    """Wrap a connector with a read-through file cache."""

    def __init__(self, inner: KnowledgeSource, cache_dir: Path):
        self.inner = inner
        self.source_id = inner.source_id
        self.cache_dir = Path(cache_dir) / self.source_id

    def _entry_path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def search(self, query: "MatchQuery") -> list[SourceRecord]:
        key = query_cache_key(self.source_id, query)
        path = self._entry_path(key)
        cached = self._read(path)
        if cached is not None:
            return cached
        records = self.inner.search(query)
        self._write(path, records)
        return records

    def _read(self, path: Path):
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            return [SourceRecord.from_dict(r) for r in doc["records"]]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            logger.warning("discarding unreadable cache entry %s: %s", path, exc)
            return None

    def _write(self, path: Path, records: list[SourceRecord]):
        doc = {
            "sourceId": self.source_id,
            "timestamp": time.time(),
            "records": [r.to_dict() for r in records],
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh)
            os.replace(tmp, path)
        except OSError as exc:
            logger.warning("cache write failed for %s: %s", path, exc)
