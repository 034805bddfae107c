"""Content-addressed on-disk cache of computed JSON documents.

An entry is keyed by (package version, computation kind, parameters).  The
file name is the sha256 of the canonical key; the file holds the key, the
payload and a sha256 checksum of the canonical payload.  Writes go to a
temporary file and are renamed into place.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from . import __version__

ENV_VAR = "HLMACKEY_CACHE_DIR"
SCHEMA = "cache-entry/1"


class CacheCorruption(Exception):
    pass


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def digest(doc: Any) -> str:
    return hashlib.sha256(canonical(doc).encode()).hexdigest()


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "hlmackey"


@dataclass
class Cache:
    root: Path

    def __post_init__(self):
        self.root = Path(self.root)

    @staticmethod
    def make_key(kind: str, params: dict) -> dict:
        return {"version": __version__, "kind": kind, "params": params}

    def path_for(self, key: dict) -> Path:
        return self.root / f"{digest(key)}.json"

    def get(self, key: dict):
        p = self.path_for(key)
        if not p.exists():
            return None
        return self._read(p)["payload"]

    def _read(self, p: Path) -> dict:
        try:
            entry = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheCorruption(f"{p.name}: unreadable") from exc
        if entry.get("schema") != SCHEMA or "payload" not in entry or "key" not in entry:
            raise CacheCorruption(f"{p.name}: bad schema")
        if digest(entry["payload"]) != entry.get("checksum"):
            raise CacheCorruption(f"{p.name}: checksum mismatch")
        if p.stem != digest(entry["key"]):
            raise CacheCorruption(f"{p.name}: file name does not match key")
        return entry

    def put(self, key: dict, payload) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        entry = {"schema": SCHEMA, "key": key, "payload": payload, "checksum": digest(payload)}
        p = self.path_for(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(json.dumps(entry, sort_keys=True, indent=1) + "\n")
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p

    def get_or_compute(self, kind: str, params: dict, compute: Callable[[], Any]):
        key = self.make_key(kind, params)
        hit = self.get(key)
        if hit is not None:
            return hit
        payload = compute()
        self.put(key, payload)
        return payload

    def entries(self) -> list[Path]:
        if not self.root.exists():
            return []
        return sorted(p for p in self.root.glob("*.json") if not p.name.startswith(".tmp-"))

    def verify(self, recompute: Callable[[str, dict], Any], fraction: float = 0.1, seed: int | None = None) -> dict:
        """Recompute a random share of entries; report corruption and mismatches."""
        paths = self.entries()
        report = {"total": len(paths), "checked": 0, "mismatches": [], "corrupt": [], "stale": 0}
        current = []
        for p in paths:
            try:
                entry = self._read(p)
            except CacheCorruption as exc:
                report["corrupt"].append(str(exc))
                continue
            if entry["key"].get("version") != __version__:
                report["stale"] += 1
                continue
            current.append((p, entry))
        if not current:
            return report
        k = max(1, round(fraction * len(current)))
        for p, entry in random.Random(seed).sample(current, min(k, len(current))):
            fresh = recompute(entry["key"]["kind"], entry["key"]["params"])
            report["checked"] += 1
            if canonical(fresh) != canonical(entry["payload"]):
                report["mismatches"].append(p.name)
        return report
