import pytest
from hypothesis import HealthCheck, settings

from etaparity import _kernels

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile (or load cached) numba kernels once so timings stay honest
    _kernels.warm_up()
