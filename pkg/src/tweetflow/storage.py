"""Atomic file writes, checksums, and CSV/JSON emit helpers.

Every stage output goes through write-to-temp-then-rename so a crashed
run never leaves a truncated file behind. CSVs are UTF-8, comma
separated, minimally quoted, with '\n' line endings; JSON is pretty
printed with sorted keys.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow(row)
        count += 1
    atomic_write_text(path, buf.getvalue())
    return count


def write_json(path: str | Path, payload) -> None:
    atomic_write_text(
        path, json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    )


def write_jsonl(path: str | Path, rows: Iterable[dict]) -> int:
    buf = io.StringIO()
    count = 0
    for row in rows:
        buf.write(json.dumps(row, sort_keys=True, ensure_ascii=False))
        buf.write("\n")
        count += 1
    atomic_write_text(path, buf.getvalue())
    return count


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def count_rows(path: str | Path) -> int:
    """Data rows in a file: lines for JSONL/GeoJSON-free formats, lines
    minus header for CSV."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        lines = sum(1 for line in fh if line.strip())
    if path.suffix == ".csv":
        return max(0, lines - 1)
    return lines
