"""Shared fixtures for the braidbook test suite."""

import os
import random
import sys
from typing import Callable

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from core.braid_core import BraidWord, closure_component_count  # noqa: E402


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def random_word(rng: random.Random, strands: int, max_length: int,
                positive: bool = False) -> BraidWord:
    length = rng.randint(0, max_length)
    letters = []
    for _ in range(length):
        index = rng.randint(1, strands - 1)
        letters.append(index if positive or rng.random() < 0.5 else -index)
    return BraidWord(strands, tuple(letters))


@pytest.fixture
def make_word(rng: random.Random) -> Callable[..., BraidWord]:
    def factory(strands: int, max_length: int, positive: bool = False) -> BraidWord:
        return random_word(rng, strands, max_length, positive)
    return factory


@pytest.fixture
def make_knot_word(rng: random.Random) -> Callable[..., BraidWord]:
    """Random words whose closure has one component, by rejection."""
    def factory(max_strands: int, max_length: int) -> BraidWord:
        while True:
            w = random_word(rng, rng.randint(2, max_strands), max_length)
            if closure_component_count(w) == 1:
                return w
    return factory


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep tests away from the user's configuration directory."""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
