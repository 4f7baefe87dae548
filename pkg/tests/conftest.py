import math
from pathlib import Path

import numpy as np
import pytest

from rspbench.benchmark import TargetEnsemble
from rspbench.linalg import PureState

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def bb84():
    """The four qubit states |0>, |1>, |+>, |-> with a uniform prior."""
    return TargetEnsemble([
        PureState([1, 0]),
        PureState([0, 1]),
        PureState([INV_SQRT2, INV_SQRT2]),
        PureState([INV_SQRT2, -INV_SQRT2]),
    ])


@pytest.fixture
def orthogonal_pair():
    return TargetEnsemble([PureState([1, 0]), PureState([0, 1])])


def random_pure_state(rng: np.random.Generator, dim: int) -> PureState:
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(z / np.linalg.norm(z))


def random_ensemble(rng: np.random.Generator, dim: int, n: int) -> TargetEnsemble:
    return TargetEnsemble([random_pure_state(rng, dim) for _ in range(n)])


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (z + z.conj().T) / 2


def eig_max_2x2_oracle(m: np.ndarray) -> float:
    """Closed-form top eigenvalue of a 2x2 Hermitian matrix (quadratic root)."""
    a = m[0, 0].real
    c = m[1, 1].real
    b = m[0, 1]
    return (a + c) / 2 + math.sqrt(((a - c) / 2) ** 2 + abs(b) ** 2)


def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, by the standard recursion."""
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
