"""
The Lorenz game: the Lorenz system, shifted into the positive orthant, written
as a GLV system and compiled into an 11x11 matrix game.

Shifting x -> x + (r, r, r) and dividing each equation by its own coordinate
gives

    x1' = x1 (sigma x2/x1 - sigma)
    x2' = x2 (eta x1/x2 - x1 x3/x2 + r x3/x2 + alpha/x2 - 1)
    x3' = x3 (x1 x2/x3 - r x1/x3 - r x2/x3 + mu/x3 - beta)

with eta = rho + r, alpha = r - rho r - r^2 and mu = r^2 + beta r.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from src.analysis.embedding import embed
from src.core.errors import ParameterError
from src.core.types import GameEmbedding, GlvSystem, Trajectory
from src.dynamics.integrators import IntegratorConfig, integrate

logger = logging.getLogger(__name__)

# Initial condition before the shift, high above the attractor. The orbit
# falls onto the attractor within a few time units, and the weights of the
# strategies with x3 in the denominator start well below any value they
# take there.
DEFAULT_X0 = (1.0, 1.0, 200.0)

# The regret run follows the orbit on the source clock, where 200 time units
# cover the attractor many times over; regret itself is still measured on
# the game clock.
REGRET_TIME_MODE = 'conjugate'
REGRET_T_END = 200.0

# One row per monomial x^B_j, in the order used by the coefficient matrix.
LORENZ_EXPONENTS = np.array([
    [-1, 1, 0],
    [1, -1, 0],
    [1, -1, 1],
    [0, -1, 1],
    [0, -1, 0],
    [1, 1, -1],
    [1, 0, -1],
    [0, 1, -1],
    [0, 0, -1],
    [0, 0, 0],
], dtype=float)


def default_shift_radius(sigma: float, rho: float, beta: float) -> float:
    """
    Heuristic shift radius r = 2 (rho + sigma).

    This is 76 for the classical parameters, enough to keep the shifted orbit
    from (1, 1, 1) in the positive orthant. It is not a proven bound; beta
    does not enter the formula.
    """
    return 2.0 * (rho + sigma)


@dataclass(frozen=True)
class LorenzParams:
    sigma: float = 10.0
    rho: float = 28.0
    beta: float = 8.0 / 3.0
    r: float = field(default=None)

    def __post_init__(self):
        if self.r is None:
            object.__setattr__(self, 'r', default_shift_radius(self.sigma, self.rho, self.beta))
        for name in ('sigma', 'rho', 'beta', 'r'):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)!r}")

    @property
    def eta(self) -> float:
        return self.rho + self.r

    @property
    def alpha(self) -> float:
        return self.r - self.rho * self.r - self.r ** 2

    @property
    def mu(self) -> float:
        return self.r ** 2 + self.beta * self.r

    @property
    def shift(self) -> np.ndarray:
        return np.full(3, self.r)


def lorenz_rhs(x, params: LorenzParams) -> np.ndarray:
    """Standard (unshifted) Lorenz field."""
    x1, x2, x3 = x
    return np.array([
        params.sigma * (x2 - x1),
        x1 * (params.rho - x3) - x2,
        x1 * x2 - params.beta * x3,
    ])


def shifted_lorenz_glv(params: LorenzParams) -> GlvSystem:
    """GLV form of the Lorenz system shifted by +(r, r, r)."""
    s, b, r = params.sigma, params.beta, params.r
    eta, alpha, mu = params.eta, params.alpha, params.mu
    A = np.array([
        [s, 0, 0, 0, 0, 0, 0, 0, 0, -s],
        [0, eta, -1, r, alpha, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 1, -r, -r, mu, -b],
    ], dtype=float)
    return GlvSystem(lam=np.zeros(3), A=A, B=LORENZ_EXPONENTS)


def lorenz_game(params: LorenzParams) -> GameEmbedding:
    logger.info("Building Lorenz game (sigma=%g, rho=%g, beta=%g, r=%g)",
                params.sigma, params.rho, params.beta, params.r)
    return embed(shifted_lorenz_glv(params))


def lorenz_symbolic_matrix(params: LorenzParams) -> np.ndarray:
    """
    The 11x11 Lorenz payoff matrix assembled entry by entry from sigma, beta,
    r, eta, alpha and mu, independently of the embedding pipeline.
    """
    s, b, r = params.sigma, params.beta, params.r
    eta, alpha, mu = params.eta, params.alpha, params.mu
    rows = [
        [-s, eta, -1, r, alpha, 0, 0, 0, 0, s - 1, 0],
        [s, -eta, 1, -r, -alpha, 0, 0, 0, 0, 1 - s, 0],
        [s, -eta, 1, -r, -alpha, 1, -r, -r, mu, 1 - s - b, 0],
        [0, -eta, 1, -r, -alpha, 1, -r, -r, mu, 1 - b, 0],
        [0, -eta, 1, -r, -alpha, 0, 0, 0, 0, 1, 0],
        [s, eta, -1, r, alpha, -1, r, r, -mu, b - s - 1, 0],
        [s, 0, 0, 0, 0, -1, r, r, -mu, b - s, 0],
        [0, eta, -1, r, alpha, -1, r, r, -mu, b - 1, 0],
        [0, 0, 0, 0, 0, -1, r, r, -mu, b, 0],
        [0] * 11,
        [0] * 11,
    ]
    return np.array(rows, dtype=float)


def reference_lorenz(params: LorenzParams, x0, cfg: IntegratorConfig) -> Trajectory:
    """
    Integrates the unshifted Lorenz system from x0, then shifts the samples
    by +(r, r, r). Used as an independent oracle for the game trajectories.
    """
    traj = integrate(lambda x: lorenz_rhs(x, params), x0, cfg)
    return Trajectory(traj.times, traj.states + params.shift, dict(traj.meta, system='lorenz'))


def min_shifted_coordinate(traj: Trajectory) -> float:
    """Smallest coordinate of a shifted orbit; positive iff it stayed in R^3_++."""
    return float(np.min(traj.states))
