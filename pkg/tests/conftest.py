# tests/conftest.py

import numpy as np
import pytest

from app.engine.numerics import TolerancePolicy


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def policy():
    return TolerancePolicy()
