import os

import pytest
from hypothesis import HealthCheck, settings

from simplicial_tc import build_complex

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile(
    "thorough",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "suite"))


@pytest.fixture
def boundary_triangle():
    """Hollow triangle: the smallest non-collapsible complex."""
    return build_complex([{"a", "b"}, {"b", "c"}, {"a", "c"}])


@pytest.fixture
def full_triangle():
    return build_complex([{"a", "b", "c"}])
