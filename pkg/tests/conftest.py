from __future__ import annotations

import pytest
from support import catalog, lattice


@pytest.fixture(scope="session")
def a2():
    return catalog("a2")


@pytest.fixture(scope="session")
def a2_lat():
    return lattice("a2")


@pytest.fixture(scope="session")
def a3():
    return catalog("a3")


@pytest.fixture(scope="session")
def a3_lat():
    return lattice("a3")


@pytest.fixture(scope="session")
def names(a2):
    """S1, S2, P of the two-vertex fixture as catalog indices."""
    return tuple(a2.index(x) for x in ("10", "01", "11"))
