"""
Content-addressed on-disk cache for solved fixtures (H_0 matrices, Υ operators).

Entries are JSON files named by the SHA-256 of the library version and the
canonical JSON of the request key. A cache only ever returns what a fresh
computation would produce, so runs with and without it agree.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__

__all__ = ["FixtureCache", "ENV_VAR", "default_cache_dir"]

ENV_VAR = "ICANON_CACHE_DIR"


def default_cache_dir() -> Path | None:
    v = os.environ.get(ENV_VAR)
    return Path(v) if v else None


class FixtureCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key: dict) -> Path:
        blob = json.dumps({"version": __version__, "key": key}, sort_keys=True, separators=(",", ":"))
        return self.root / (hashlib.sha256(blob.encode()).hexdigest() + ".json")

    def get(self, key: dict):
        p = self._path(key)
        if not p.exists():
            self.misses += 1
            return None
        try:
            with open(p, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            self.misses += 1
            return None
        if data.get("key") != key:
            self.misses += 1
            return None
        self.hits += 1
        return data["value"]

    def put(self, key: dict, value) -> None:
        p = self._path(key)
        # write-then-rename so concurrent readers never see a partial file
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"key": key, "value": value}, fh, sort_keys=True)
        os.replace(tmp, p)
