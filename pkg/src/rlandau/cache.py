"""On-disk cache of solver results.

Each record is one ``.npz`` file named by the hash of its key.  The key itself
and a format version are stored inside the file, so records are
self-describing.  Writes go to a temporary file first and are moved into place
atomically, so concurrent readers never see partial records.

The directory comes from ``RLANDAU_CACHE_DIR``; set it to ``off`` to disable
the disk layer.  An in-process dictionary sits in front of the disk.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

import numpy as np

FORMAT_VERSION = 1
ENV_VAR = "RLANDAU_CACHE_DIR"

_memory: dict[str, dict] = {}


def cache_dir() -> Path | None:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return Path.home() / ".cache" / "rlandau"
    if raw.strip().lower() in ("", "off", "none", "0"):
        return None
    return Path(raw)


def _digest(key: dict) -> tuple[str, str]:
    text = json.dumps({"v": FORMAT_VERSION, **key}, sort_keys=True, default=float)
    return text, hashlib.sha256(text.encode()).hexdigest()


def load(key: dict) -> dict | None:
    text, h = _digest(key)
    if h in _memory:
        return _memory[h]
    d = cache_dir()
    if d is None:
        return None
    path = d / f"{h}.npz"
    try:
        with np.load(path, allow_pickle=False) as data:
            if str(data["__key__"]) != text:
                return None
            rec = {k: data[k] for k in data.files if k != "__key__"}
    except (OSError, KeyError, ValueError):
        return None
    _memory[h] = rec
    return rec


def store(key: dict, arrays: dict) -> None:
    text, h = _digest(key)
    rec = {k: np.asarray(v) for k, v in arrays.items()}
    _memory[h] = rec
    d = cache_dir()
    if d is None:
        return
    try:
        d.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
        with os.fdopen(fd, "wb") as fh:
            np.savez(fh, __key__=np.array(text), **rec)
        os.replace(tmp, d / f"{h}.npz")
    except OSError:
        pass


def clear_memory() -> None:
    _memory.clear()
