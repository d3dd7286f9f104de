"""Small file-output helpers: atomic writes, stable float formatting."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Iterable

__all__ = ["fmt", "atomic_write_text", "atomic_write_lines", "atomic_write_json"]


def fmt(v: float) -> str:
    """17-significant-digit scientific notation (round-trips a double)."""
    return format(float(v), ".16e")


def atomic_write_lines(path, lines: Iterable[str]) -> None:
    """Write LF-terminated lines to a temp file in the target directory,
    then rename over `path`.  Either the old content or the complete new
    content exists at any moment, never a torn file.
    """
    target = Path(path)
    parent = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=str(parent), prefix=target.name + ".", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            for line in lines:
                fh.write(line)
                fh.write("\n")
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path, text: str) -> None:
    target = Path(path)
    parent = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=str(parent), prefix=target.name + ".", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_json(path, obj) -> None:
    """Atomic JSON dump with sorted keys (stable across runs)."""
    atomic_write_text(path, json.dumps(obj, sort_keys=True, indent=2) + "\n")
