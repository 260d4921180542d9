import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from mincusco.domain import PiecewiseFn, Q, SpaceX
from mincusco.setvalued import CuscoMap, envelope

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def X():
    return SpaceX(-1, 1)


@pytest.fixture
def heaviside(X):
    """0 left of 0, 1 at 0 and to the right."""
    return PiecewiseFn.step(X, 0, 0, 1, 1)


@pytest.fixture
def step(heaviside):
    """{0} for x < 0, [0, 1] at 0, {1} for x > 0."""
    return envelope(heaviside)


@pytest.fixture
def zero(X):
    return CuscoMap.zero(X)


@pytest.fixture
def half():
    return Q(1, 2)
