"""
Shared fixtures for the figurate toolkit tests
"""
import random
from pathlib import Path

import pytest

from src.config import Config
from src.posets import build_poset

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def config(tmp_path, monkeypatch) -> Config:
    """Config isolated from the developer's .env and FIGURATE_* variables"""
    # setenv first so teardown also drops values load_dotenv writes
    for key in ("FIGURATE_OUTPUT_FORMAT", "FIGURATE_LOG_LEVEL", "FIGURATE_LOG_FILE", "FIGURATE_SWEEP_DEFAULT"):
        monkeypatch.setenv(key, "")
        monkeypatch.delenv(key)
    return Config(env_file=str(tmp_path / "missing.env"), config_dir=tmp_path)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


@pytest.fixture
def forked_chain():
    return build_poset(
        ["a", "b", "c", "d", "e", "f"],
        [("a", "b"), ("b", "c"), ("f", "c"), ("c", "d"), ("d", "e")],
    )


@pytest.fixture
def suitable_block():
    return build_poset(
        ["a", "b1", "b2", "b", "c1", "c2", "c3"],
        [("b1", "b"), ("b2", "b"), ("a", "c1"), ("b", "c1"), ("c1", "c2"), ("c2", "c3")],
    )


@pytest.fixture
def suitable_block_derived():
    """Expected derived poset of suitable_block, drawn with independent labels"""
    return build_poset(
        ["x", "y1", "y2", "y", "m1", "m2", "m3", "p1", "p2", "p3"],
        [
            ("x", "m1"),
            ("m1", "m2"),
            ("m2", "m3"),
            ("p1", "p2"),
            ("p2", "p3"),
            ("m1", "p1"),
            ("m2", "p2"),
            ("m3", "p3"),
            ("y1", "y"),
            ("y2", "y"),
            ("y", "p1"),
        ],
    )
