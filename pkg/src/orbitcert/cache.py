"""Content-addressed disk cache for heavy eliminations and certificates.

Keys are derived from an operation tag plus the content hashes of the
inputs and all relevant parameters, so a stale entry can never be returned
for changed inputs.  Location: ORBITCERT_CACHE_DIR, else
~/.cache/orbitcert.  Entries are plain text files (polynomial
serializations or JSON), safe to inspect and delete.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENV_VAR = "ORBITCERT_CACHE_DIR"

# bumped whenever a cached computation's algorithm changes shape; stale
# entries from older code then simply miss
ALGO_VERSION = "2"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "orbitcert"


class Cache:
    def __init__(self, root=None, enabled: bool = True):
        self.root = Path(root) if root else default_cache_dir()
        self.enabled = enabled

    def _path(self, tag: str, parts, ext: str) -> Path:
        h = hashlib.sha256()
        h.update(ALGO_VERSION.encode())
        h.update(b"\x00")
        for p in parts:
            h.update(str(p).encode())
            h.update(b"\x00")
        return self.root / f"{tag}-{h.hexdigest()[:16]}.{ext}"

    def get_text(self, tag: str, parts):
        if not self.enabled:
            return None
        p = self._path(tag, parts, "txt")
        if p.exists():
            return p.read_text()
        return None

    def put_text(self, tag: str, parts, value: str):
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(tag, parts, "txt")
        tmp = p.with_suffix(".tmp")
        tmp.write_text(value)
        tmp.replace(p)

    def get_json(self, tag: str, parts):
        if not self.enabled:
            return None
        p = self._path(tag, parts, "json")
        if p.exists():
            with p.open() as fh:
                return json.load(fh)
        return None

    def put_json(self, tag: str, parts, value):
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(tag, parts, "json")
        tmp = p.with_suffix(".tmp")
        with tmp.open("w") as fh:
            json.dump(value, fh, sort_keys=True)
        tmp.replace(p)

    def entries(self):
        if not self.root.exists():
            return []
        return sorted(
            (f.name, f.stat().st_size) for f in self.root.iterdir() if f.is_file()
        )

    def clear(self) -> int:
        n = 0
        if self.root.exists():
            for f in list(self.root.iterdir()):
                if f.is_file():
                    f.unlink()
                    n += 1
        return n
