"""Shared fixtures: the ring files shipped in data/ and the family members built from them."""

import json
from pathlib import Path

import pytest

from modules.based_ring import FusionRing
from modules.rank4_families import KParams, build_K, k1_ring

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# K(2, 4, 2, 1, 0, 2) = R(1, 2, 1, 0): passes the reciprocal-sum gate, fails the square-sum gate
TABLE1_PARAMS = KParams(2, 4, 2, 1, 0, 2)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def table1_path() -> Path:
    return DATA_DIR / "table1.json"


@pytest.fixture
def table1_ring() -> FusionRing:
    return FusionRing.from_dict(json.loads((DATA_DIR / "table1.json").read_text(encoding="utf-8")))


@pytest.fixture
def rep_a4_ring() -> FusionRing:
    return k1_ring(2)


@pytest.fixture
def table1_built() -> FusionRing:
    return build_K(TABLE1_PARAMS)


@pytest.fixture
def broken_ring_path(tmp_path) -> Path:
    """table1 with X*X changed to Y + Z, which breaks associativity."""
    data = json.loads((DATA_DIR / "table1.json").read_text(encoding="utf-8"))
    data["N"][1][1] = [0, 0, 1, 1]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path
