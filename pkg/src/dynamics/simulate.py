"""
Simulation front-ends with domain guards.

GLV and LV runs abort when a component approaches the boundary of the open
orthant. Replicator runs renormalize onto the simplex after every accepted
step and abort, instead of clamping, when a component underflows.
"""
import logging

import numpy as np

from src.core.errors import BoundaryCollisionError, DomainError, ParameterError, SimplexUnderflowError
from src.core.fields import (GAME, TIME_MODES, require_positive, check_simplex_point,
                             eval_glv_rhs, eval_lv_rhs, replicator_velocity)
from src.core.types import GlvSystem, LvSystem, PayoffMatrix, PolynomialField, Trajectory
from src.dynamics.integrators import IntegratorConfig, integrate

logger = logging.getLogger(__name__)

POSITIVITY_FLOOR = 1e-12
UNDERFLOW_FLOOR = 1e-300


def _orthant_guard(t, x):
    if np.min(x) < POSITIVITY_FLOOR:
        i = int(np.argmin(x))
        raise BoundaryCollisionError(
            f"component {i} fell to {x[i]!r} at t={t!r}; the orbit hit the orthant boundary"
        )


def _orthant_field(evaluate):
    def rhs(x):
        try:
            return evaluate(x)
        except DomainError as e:
            raise BoundaryCollisionError(f"stage evaluation left the positive orthant: {e}") from e
    return rhs


def simulate_glv(sys: GlvSystem, x0, cfg: IntegratorConfig) -> Trajectory:
    """
    Integrates a GLV system from a strictly positive initial state.

    Raises:
        BoundaryCollisionError: if any component drops below 1e-12.
    """
    x0 = require_positive(x0, sys.n, name='x0')
    traj = integrate(_orthant_field(lambda x: eval_glv_rhs(sys, x)), x0, cfg, guard=_orthant_guard)
    return Trajectory(traj.times, traj.states, dict(traj.meta, system='glv'))


def simulate_lv(lv: LvSystem, z0, cfg: IntegratorConfig) -> Trajectory:
    z0 = require_positive(z0, lv.d, name='z0')
    traj = integrate(_orthant_field(lambda z: eval_lv_rhs(lv, z)), z0, cfg, guard=_orthant_guard)
    return Trajectory(traj.times, traj.states, dict(traj.meta, system='lv'))


def simulate_field(field: PolynomialField, y0, cfg: IntegratorConfig) -> Trajectory:
    """Integrates a polynomial field directly, without any domain guard."""
    traj = integrate(field.evaluate, y0, cfg)
    return Trajectory(traj.times, traj.states, dict(traj.meta, system='polynomial'))


def _renormalize(p):
    return p / p.sum()


def _simplex_guard(t, p):
    if np.min(p) < UNDERFLOW_FLOOR:
        i = int(np.argmin(p))
        raise SimplexUnderflowError(f"strategy {i} underflowed to {p[i]!r} at t={t!r}")


def simulate_replicator(game: PayoffMatrix, p0, time_mode: str, cfg: IntegratorConfig) -> Trajectory:
    """
    Integrates replicator dynamics on a game from an interior point.

    Args:
        game: The payoff matrix.
        p0: Initial point in the simplex interior.
        time_mode: 'game' for p_i' = p_i((Ap)_i - p.Ap); 'conjugate' divides
            the field by p_m.
        cfg: Integrator configuration.

    Returns:
        The sampled trajectory; every sample lies on the simplex.
    """
    if time_mode not in TIME_MODES:
        raise ParameterError(f"unknown time mode {time_mode!r}; expected one of {TIME_MODES}")
    p0 = _renormalize(check_simplex_point(p0, game.m))
    A = game.A

    if time_mode == GAME:
        def rhs(p):
            return replicator_velocity(A, p)
    else:
        def rhs(p):
            return replicator_velocity(A, p) / p[-1]

    logger.info("Simulating replicator dynamics on a %dx%d game (%s time)", game.m, game.m, time_mode)
    traj = integrate(rhs, p0, cfg, project=_renormalize, guard=_simplex_guard)
    if np.min(traj.states) < UNDERFLOW_FLOOR:
        raise SimplexUnderflowError("a sampled strategy weight underflowed")
    return Trajectory(traj.times, traj.states, dict(traj.meta, system='replicator', time_mode=time_mode))
