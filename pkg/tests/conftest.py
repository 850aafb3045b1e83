"""Shared fixtures for the propa test suite."""

from __future__ import annotations

from collections.abc import Iterator

import pytest
import structlog

from propa.config import get_settings
from propa.graphs.base import Graph
from propa.graphs.generators import hypercube


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    """Rebuild settings from the environment for every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def fresh_logging() -> Iterator[None]:
    """Drop logging config bound to a per-test captured stream."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def square() -> Graph:
    """The 2-cube, a 4-cycle labelled by bit strings."""
    return hypercube(2)


@pytest.fixture
def cube() -> Graph:
    """The 3-cube."""
    return hypercube(3)


@pytest.fixture
def chordal_ten() -> Graph:
    """Chordal graph on 10 vertices whose epsilon at radius 1 is 16/17."""
    return Graph.from_edges(
        10,
        [
            (0, 5), (0, 7), (0, 8), (0, 9), (1, 6), (1, 8),
            (1, 9), (2, 7), (3, 8), (4, 9), (7, 9), (8, 9),
        ],
        name="chordal-ten",
    )
