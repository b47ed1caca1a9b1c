"""Shared fixtures: settings isolation and the digit sets used across the suite."""
from __future__ import annotations

from collections.abc import Iterator

import pytest

from core.config import get_settings
from core.families import sumset_of_multigeometric
from models.sigma import FiniteSigma


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    """Re-read settings from the environment for every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def ferens_sigma() -> FiniteSigma:
    """Digit set {0, 3, 4, ..., 15, 18} of the sequence (6, 5, 4, 3)."""
    return sumset_of_multigeometric((6, 5, 4, 3))


@pytest.fixture
def example_sigma() -> FiniteSigma:
    """Digit set {0, 2, 3, 4, 5, 6, 7, 9} of the sequence (4, 3, 2)."""
    return sumset_of_multigeometric((4, 3, 2))


@pytest.fixture
def guthrie_nymann_sigma() -> FiniteSigma:
    """Digit set {0, 2, 3, 5} of the sequence (3, 2)."""
    return FiniteSigma.of((0, 2, 3, 5))


@pytest.fixture
def consecutive_sigma() -> FiniteSigma:
    """Digit set {0, 1, 2}."""
    return FiniteSigma.of((0, 1, 2))
