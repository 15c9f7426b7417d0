from pathlib import Path

import pytest

from softtop.sets import Context, SoftSet
from softtop.topology import SoftSpace, SoftTopology

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def ctx():
    return Context(("a", "b"), ("e1", "e2"))


@pytest.fixture
def F(ctx):
    return SoftSet.from_rows(ctx, {"e1": ["a"], "e2": []})


@pytest.fixture
def G(ctx):
    return SoftSet.from_rows(ctx, {"e1": ["a", "b"], "e2": ["b"]})


@pytest.fixture
def F1(ctx):
    return SoftSet.from_rows(ctx, {"e1": ["a"], "e2": ["a"]})


@pytest.fixture
def one_open(ctx, F1):
    """Topology {null, absolute, F1}."""
    return SoftSpace(ctx, SoftTopology(ctx, [SoftSet.null(ctx), SoftSet.absolute(ctx), F1]))


@pytest.fixture
def fixtures_dir():
    return FIXTURES
