"""Content-addressed JSON result cache: one file per key, atomic writes."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "BEI_CACHE_DIR"


def content_key(payload: dict) -> str:
    """SHA-256 of the canonical JSON serialisation of ``payload``."""
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def ideal_key(ideal, operation: str, **params) -> str:
    return content_key(
        {
            "op": operation,
            "ring": ideal.ring.describe(),
            "generators": sorted(str(g) for g in ideal.generators),
            "params": params,
        }
    )


class ResultCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls, explicit: str | None = None) -> "ResultCache | None":
        path = explicit or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        path = self._path(key)
        try:
            with open(path) as fh:
                data = json.load(fh)
            if data.get("key") != key:
                raise ValueError("key mismatch")
        except FileNotFoundError:
            self.misses += 1
            return None
        except (ValueError, OSError):
            # corrupt entry: drop it so the caller recomputes and overwrites
            path.unlink(missing_ok=True)
            self.misses += 1
            return None
        self.hits += 1
        return data["value"]

    def put(self, key: str, value: dict) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump({"key": key, "value": value}, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses}
