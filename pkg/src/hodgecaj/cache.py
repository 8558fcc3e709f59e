"""Content-addressed JSON cache for expensive results.

Each entry is one file: a header line ``{"version", "key", "digest"}``
followed by the JSON payload.  Entries with a different version, a key
mismatch or a payload that does not hash to the recorded digest are
ignored and recomputed.  Writes go through a temporary file and an atomic
rename.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Optional

from . import __version__

log = logging.getLogger(__name__)


def cache_key(command: str, params: dict) -> str:
    blob = json.dumps({"version": __version__, "command": command, "params": params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class Cache:
    def __init__(self, directory: Optional[str]):
        self.directory = Path(directory) if directory else None
        self.hits = 0

    def path(self, key: str) -> Optional[Path]:
        return None if self.directory is None else self.directory / f"{key}.json"

    def read(self, key: str) -> Optional[Any]:
        path = self.path(key)
        if path is None or not path.exists():
            return None
        try:
            header_line, payload = path.read_text().split("\n", 1)
            header = json.loads(header_line)
            if header.get("version") != __version__ or header.get("key") != key:
                return None
            if header.get("digest") != _digest(payload):
                log.warning("cache entry %s is corrupt, recomputing", path.name)
                return None
            return json.loads(payload)
        except (OSError, ValueError) as exc:
            log.warning("unreadable cache entry %s (%s), recomputing", path.name, exc)
            return None

    def write(self, key: str, payload: Any) -> None:
        path = self.path(key)
        if path is None:
            return
        text = json.dumps(payload, sort_keys=True)
        header = json.dumps({"version": __version__, "key": key, "digest": _digest(text)}, sort_keys=True)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(header + "\n" + text)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s: %s", path, exc)

    def get_or_compute(self, command: str, params: dict, compute: Callable[[], Any]) -> Any:
        key = cache_key(command, params)
        hit = self.read(key)
        if hit is not None:
            self.hits += 1
            return hit
        payload = compute()
        self.write(key, payload)
        return payload
