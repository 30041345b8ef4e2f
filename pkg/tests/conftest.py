import math

import pytest


def mc_tol(p: float, B: int, z: float = 4.0) -> float:
    """Monte Carlo tolerance for a probability estimate: z * sqrt(p(1-p)/B)."""
    return z * math.sqrt(p * (1.0 - p) / B)


@pytest.fixture
def tol():
    return mc_tol
