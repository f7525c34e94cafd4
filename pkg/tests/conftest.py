from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from sixlines.curvequad import ConfigPoint
from sixlines.periodmap import forward

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def p_03_05():
    return forward(ConfigPoint(0.3, 0.5))


@pytest.fixture(scope="session")
def p_03_03():
    return forward(ConfigPoint(0.3, 0.3))
