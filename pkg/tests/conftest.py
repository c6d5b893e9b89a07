from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = DATA_DIR / "golden"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def fixture_paths() -> dict[str, Path]:
    """The checked-in 10-student dataset used by CLI and golden tests."""
    return {
        "roster": DATA_DIR / "roster.csv",
        "friends": DATA_DIR / "friends.csv",
        "prefs": DATA_DIR / "prefs.csv",
        "reference": DATA_DIR / "new_teams.csv",
    }
