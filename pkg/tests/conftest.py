"""Shared fixtures: warm the jit kernel once so timed tests see steady state."""

import numpy as np
import pytest

from mfcorr.kernels import HAS_NUMBA, sliding_sums


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    f = np.linspace(-1.0, 1.0, 32)
    g = np.linspace(1.0, -1.0, 8)
    sliding_sums(f, g, -3, 32)
    return HAS_NUMBA
