import pytest
from hypothesis import HealthCheck, settings

from rotalg import golden_angle, silver_angle

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return golden_angle()


@pytest.fixture(scope="session")
def silver():
    return silver_angle()
