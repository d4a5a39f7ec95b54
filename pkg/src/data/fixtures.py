"""
Built-in systems used by the verify suite, the tests and the CLI examples.
"""
import logging

import numpy as np

from src.core.errors import ParameterError
from src.core.fields import replicator_field_polynomial
from src.core.types import GlvSystem, PayoffMatrix, PolynomialField

logger = logging.getLogger(__name__)

# Exponents of random systems are drawn from {-1, 0, 1} with at most this many
# non-zero entries per monomial.
MAX_SUPPORT = 2

ROCK_PAPER_SCISSORS = np.array([
    [0.0, -1.0, 1.0],
    [1.0, 0.0, -1.0],
    [-1.0, 1.0, 0.0],
])


def logistic_glv() -> GlvSystem:
    """x' = x (1 - x)."""
    return GlvSystem(lam=[1.0], A=[[-1.0]], B=[[1.0]])


def logistic_solution(x0: float, t):
    growth = np.exp(np.asarray(t, dtype=float))
    return x0 * growth / (1.0 - x0 + x0 * growth)


def competitive_glv() -> GlvSystem:
    """Two-species competitive LV system with a stable interior equilibrium at (2/3, 2/3)."""
    return GlvSystem(lam=[1.0, 1.0], A=[[-1.0, -0.5], [-0.5, -1.0]], B=np.eye(2))


def random_glv(n: int, seed: int, n_monomials: int = None) -> GlvSystem:
    """
    Seeded random GLV system on R^n_++.

    Coefficients and growth rates are uniform on [-1, 1]; exponent rows are
    sparse vectors over {-1, 0, 1}. The exponent matrix may be rank deficient,
    which the embedding pipeline repairs.
    """
    if n < 1:
        raise ParameterError(f"n must be positive, got {n!r}")
    rng = np.random.default_rng(seed)
    k = n_monomials if n_monomials is not None else n + 2
    B = np.zeros((k, n))
    for j in range(k):
        support = rng.choice(n, size=min(MAX_SUPPORT, n), replace=False)
        B[j, support] = rng.choice([-1.0, 0.0, 1.0], size=support.size)
    lam = rng.uniform(-1.0, 1.0, n)
    A = rng.uniform(-1.0, 1.0, (n, k))
    logger.debug("Random GLV system: n=%d, %d monomials, seed=%d", n, k, seed)
    return GlvSystem(lam=lam, A=A, B=B)


def random_glv_family(seed: int, count: int = 3, dims=(2, 3, 5)) -> list:
    """A few random systems of the given dimensions, each with its own derived seed."""
    seeds = np.random.SeedSequence(seed).generate_state(count)
    return [random_glv(dims[i % len(dims)], int(s)) for i, s in enumerate(seeds)]


def rock_paper_scissors() -> PayoffMatrix:
    return PayoffMatrix(A=ROCK_PAPER_SCISSORS)


def polynomial_fixture() -> PolynomialField:
    """Replicator field of a perturbed rock-paper-scissors game, tangent to the 3-simplex."""
    A = ROCK_PAPER_SCISSORS + np.diag([0.5, 0.0, -0.25])
    return replicator_field_polynomial(PayoffMatrix(A=A))


def sample_box(n: int, count: int, seed: int, low: float = 0.1, high: float = 10.0) -> np.ndarray:
    """Fixed-seed uniform points in [low, high]^n."""
    return np.random.default_rng(seed).uniform(low, high, (count, n))
