"""Append-only JSON cache for scan results."""
from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

CACHE_VERSION = 1


def cache_key(**fields) -> str:
    """Canonical string key; field order does not matter."""
    return json.dumps(fields, sort_keys=True, separators=(",", ":"))


class ScanCache:
    """Maps canonical keys to JSON-serializable results.

    Entries are never overwritten, so a cache hit returns exactly what the
    first run stored.  Writes go through a temp file and ``os.replace``.
    """

    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path is not None else None
        self.entries: dict[str, object] = {}
        self._lock = threading.Lock()
        self._dirty = False
        self.hits = 0
        self.misses = 0
        if self.path is not None and self.path.exists():
            data = json.loads(self.path.read_text())
            if data.get("version") != CACHE_VERSION:
                raise ValueError(f"cache {self.path} has version {data.get('version')}, expected {CACHE_VERSION}")
            self.entries = dict(data.get("entries", {}))

    def get(self, key: str):
        with self._lock:
            if key in self.entries:
                self.hits += 1
                return self.entries[key]
            self.misses += 1
            return None

    def put(self, key: str, value):
        """Store ``value`` unless ``key`` exists; return the stored entry."""
        with self._lock:
            if key not in self.entries:
                # round-trip through JSON so cached and fresh values serialize identically
                self.entries[key] = json.loads(json.dumps(value, sort_keys=True))
                self._dirty = True
            return self.entries[key]

    def save(self) -> None:
        if self.path is None or not self._dirty:
            return
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".cache-", suffix=".json")
            with os.fdopen(fd, "w") as fh:
                json.dump({"version": CACHE_VERSION, "entries": self.entries}, fh, sort_keys=True)
            os.replace(tmp, self.path)
            self._dirty = False
