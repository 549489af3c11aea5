import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

SEED = 20040101


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def box(rng, n, re=1.0, im=1.0):
    return rng.uniform(-re, re, n) + 1j * rng.uniform(-im, im, n)
