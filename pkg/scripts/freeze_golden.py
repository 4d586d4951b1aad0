#!/usr/bin/env python3
"""Freeze the golden output checksums for the bundled fixture pipeline.

Runs the full pipeline on tests/fixtures/corpus200.jsonl with seed 42 into
a scratch directory and records the sha256 of every produced file (the
manifest is excluded: it carries wall-clock timings). The acceptance suite
replays the run twice and compares byte-for-byte against this file.

Rerun this script whenever an intentional change alters pipeline output.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
GOLDEN = REPO / "tests" / "fixtures" / "golden_checksums.json"


def main() -> int:
    sys.path.insert(0, str(REPO / "src"))
    from tweetflow.config import load_config
    from tweetflow.pipeline import run_all
    from tweetflow.storage import sha256_file

    with tempfile.TemporaryDirectory() as scratch:
        config = load_config(
            REPO / "tests" / "fixtures" / "pipeline.yaml",
            out_override=str(Path(scratch) / "out"),
            seed_override=42,
        )
        run_all(config)
        checksums = {}
        for path in sorted(config.out.rglob("*")):
            if path.is_file() and path.name != "manifest.json":
                checksums[str(path.relative_to(config.out))] = sha256_file(path)
    GOLDEN.write_text(
        json.dumps(checksums, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"froze {len(checksums)} file checksums to {GOLDEN}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
