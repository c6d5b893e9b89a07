#!/usr/bin/env python3
"""Regenerate the golden CLI outputs under tests/data/golden/.

Every golden is one subcommand run against the checked-in 10-student
fixture.  Run this only after verifying a deliberate behavior change;
the acceptance suite compares byte-for-byte.
"""

from __future__ import annotations

import contextlib
import io
from pathlib import Path

from cohort_alloc.cli import main

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
GOLDEN = DATA / "golden"

FIXTURE = [
    "--roster", str(DATA / "roster.csv"),
    "--friends", str(DATA / "friends.csv"),
    "--prefs", str(DATA / "prefs.csv"),
]
REFERENCE = ["--reference", str(DATA / "new_teams.csv")]

RUNS: dict[str, list[str]] = {}
for fmt in ("table", "json", "csv"):
    RUNS[f"stats.{fmt}"] = ["stats", *FIXTURE, "--format", fmt]
    RUNS[f"allocate_sweep.{fmt}"] = [
        "allocate", *FIXTURE, "--algo", "pffn", "--sweep", *REFERENCE,
        "--format", fmt,
    ]
    RUNS[f"flags.{fmt}"] = [
        "flags", "--roster", str(DATA / "roster.csv"),
        "--prefs", str(DATA / "prefs.csv"), "--semester", "2",
        "--format", fmt,
    ]
    RUNS[f"compare.{fmt}"] = [
        "compare", *FIXTURE, "--algo", "pfcfs", *REFERENCE, "--format", fmt,
    ]
    RUNS[f"validate.{fmt}"] = ["validate", *FIXTURE, "--format", fmt]
RUNS["allocate_start0.csv"] = [
    "allocate", *FIXTURE, "--algo", "pfcfs", "--start", "0", "--format", "csv",
]

EXTENSIONS = {"table": "txt", "json": "json", "csv": "csv"}


def golden_path(name: str) -> Path:
    stem, fmt = name.rsplit(".", 1)
    return GOLDEN / f"{stem}.{EXTENSIONS[fmt]}"


def regenerate() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in sorted(RUNS.items()):
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = main(argv)
        if code != 0:
            raise SystemExit(f"{name}: exit code {code}")
        path = golden_path(name)
        path.write_text(buffer.getvalue(), encoding="utf-8")
        print(f"wrote {path.relative_to(ROOT)}")


if __name__ == "__main__":
    regenerate()
