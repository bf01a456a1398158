import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SPACES = os.path.join(os.path.dirname(os.path.dirname(__file__)), "spaces")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def spaces_dir():
    return SPACES
