import math
import os
import sys

import pytest

# Add the project root directory to the Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from pstchain.dto.chain import ChainSpec, Rational
from pstchain.service.spectral import analytic_eigenbasis

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


@pytest.fixture
def golden_ratio():
    return GOLDEN_RATIO


@pytest.fixture
def mixed_chain():
    """N=5, alpha=beta=1: PST at pi and balanced revival at pi/2."""
    return ChainSpec(N=5, alpha=1.0, beta=1.0, ratio=Rational(num=1, den=1))


@pytest.fixture
def quadratic_chain():
    """N=4, beta=0: pure-quadratic chain with PST at pi/alpha."""
    return ChainSpec(N=4, alpha=1.0, beta=0.0)


@pytest.fixture
def nn_chain():
    return ChainSpec(N=5, alpha=0.0, beta=1.0)


@pytest.fixture(scope="session")
def eigenbasis():
    """Analytic eigenbases cached across the session."""
    cache = {}

    def get(N):
        if N not in cache:
            cache[N] = analytic_eigenbasis(N)
        return cache[N]

    return get
