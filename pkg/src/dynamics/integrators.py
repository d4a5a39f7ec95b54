"""
Explicit integrators for autonomous vector fields.

Two methods are available:
    - dp54_adaptive: Dormand-Prince 5(4) (scipy's RK45) with error control
      and its 4th-order dense output, which produces the uniform sample grid.
    - rk4_fixed: classical Runge-Kutta with a constant step that lands exactly
      on every sample time.

Callers may pass a `project` callable, applied to the state after every
accepted step and to every sample, and a `guard` callable that inspects the
state after every accepted step and raises to abort the run.
"""
import logging
import math
from dataclasses import dataclass, asdict

import numpy as np
from scipy.integrate import RK45

from src.config import get_integrator_settings
from src.core.errors import IntegrationError, MaxStepsExceeded, NonFiniteRHSError, ParameterError
from src.core.types import Trajectory

logger = logging.getLogger(__name__)

RK4_FIXED = 'rk4_fixed'
DP54_ADAPTIVE = 'dp54_adaptive'
METHODS = (RK4_FIXED, DP54_ADAPTIVE)

# RK45 costs one evaluation at start-up and six per attempted step.
_DP54_STAGES = 6


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = DP54_ADAPTIVE
    dt_init: float = 1e-3
    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    t_end: float = 1.0
    max_steps: int = 10_000_000
    sample_dt: float = 0.01

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"unknown integrator {self.method!r}; expected one of {METHODS}")
        for name in ('rel_tol', 'abs_tol'):
            value = getattr(self, name)
            if not 0 < value <= 1e-2:
                raise ParameterError(f"{name} must lie in (0, 1e-2], got {value!r}")
        for name in ('dt_init', 't_end', 'sample_dt'):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.max_steps < 1:
            raise ParameterError(f"max_steps must be positive, got {self.max_steps!r}")

    @classmethod
    def from_settings(cls, **overrides) -> 'IntegratorConfig':
        """Config built from config-file/environment defaults plus explicit overrides."""
        settings = get_integrator_settings()
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    def with_tolerance(self, tol: float) -> 'IntegratorConfig':
        return IntegratorConfig(**dict(asdict(self), rel_tol=tol, abs_tol=tol))


def sample_grid(t_end: float, sample_dt: float) -> np.ndarray:
    count = int(math.floor(t_end / sample_dt + 1e-9))
    grid = sample_dt * np.arange(count + 1)
    if t_end - grid[-1] > 1e-9 * sample_dt:
        grid = np.append(grid, t_end)
    else:
        grid[-1] = t_end
    return grid


class _CheckedField:
    """Wraps an autonomous field as f(t, y), rejecting non-finite values."""

    def __init__(self, rhs):
        self.rhs = rhs
        self.calls = 0

    def __call__(self, t, y):
        self.calls += 1
        dy = np.asarray(self.rhs(y), dtype=float)
        if not np.all(np.isfinite(dy)):
            raise NonFiniteRHSError(t, y)
        return dy


def _integrate_dp54(field, x0, cfg, grid, project, guard):
    samples = np.empty((grid.size, x0.size))
    samples[0] = x0
    solver = RK45(field, 0.0, x0, cfg.t_end, first_step=min(cfg.dt_init, cfg.t_end),
                  rtol=cfg.rel_tol, atol=cfg.abs_tol)
    k = 1
    n_steps = 0
    n_projections = 0
    max_step_used = 0.0
    while solver.status == 'running':
        if n_steps >= cfg.max_steps:
            raise MaxStepsExceeded(f"exceeded {cfg.max_steps} steps at t={solver.t!r}")
        message = solver.step()
        if solver.status == 'failed':
            raise IntegrationError(f"step failed at t={solver.t!r}: {message}")
        n_steps += 1
        max_step_used = max(max_step_used, solver.t - solver.t_old)
        if k < grid.size and grid[k] <= solver.t:
            dense = solver.dense_output()
            while k < grid.size and grid[k] <= solver.t:
                samples[k] = dense(grid[k]) if grid[k] < solver.t else solver.y
                if project is not None:
                    samples[k] = project(samples[k])
                k += 1
        if project is not None:
            solver.y = project(solver.y)
            solver.f = solver.fun(solver.t, solver.y)
            n_projections += 1
        if guard is not None:
            guard(solver.t, solver.y)
    n_rejected = max(0, (solver.nfev - 1 - n_projections) // _DP54_STAGES - n_steps)
    stats = {'n_steps': n_steps, 'n_rejected': n_rejected, 'max_step_used': max_step_used}
    return samples, stats


def _rk4_step(field, t, y, h):
    k1 = field(t, y)
    k2 = field(t + h / 2, y + h / 2 * k1)
    k3 = field(t + h / 2, y + h / 2 * k2)
    k4 = field(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _integrate_rk4(field, x0, cfg, grid, project, guard):
    samples = np.empty((grid.size, x0.size))
    samples[0] = x0
    y = x0.copy()
    n_steps = 0
    max_step_used = 0.0
    for k in range(1, grid.size):
        t0, t1 = grid[k - 1], grid[k]
        substeps = max(1, int(math.ceil((t1 - t0) / cfg.dt_init - 1e-9)))
        h = (t1 - t0) / substeps
        max_step_used = max(max_step_used, h)
        for j in range(substeps):
            if n_steps >= cfg.max_steps:
                raise MaxStepsExceeded(f"exceeded {cfg.max_steps} steps at t={t0 + j * h!r}")
            y = _rk4_step(field, t0 + j * h, y, h)
            n_steps += 1
            if project is not None:
                y = project(y)
            if guard is not None:
                guard(t0 + (j + 1) * h, y)
        samples[k] = y
    return samples, {'n_steps': n_steps, 'max_step_used': max_step_used}


def integrate(rhs, x0, cfg: IntegratorConfig, project=None, guard=None) -> Trajectory:
    """
    Integrates x' = rhs(x) from x0 over [0, cfg.t_end].

    Args:
        rhs: Autonomous vector field, rhs(x) -> dx/dt.
        x0: Initial state.
        cfg: Integrator configuration.
        project: Optional map applied after every accepted step and to samples.
        guard: Optional callable guard(t, x) that raises to abort the run.

    Returns:
        A Trajectory sampled on {0, sample_dt, 2 sample_dt, ..., t_end}.
    """
    x0 = np.array(x0, dtype=float)
    field = _CheckedField(rhs)
    field(0.0, x0)
    grid = sample_grid(cfg.t_end, cfg.sample_dt)
    logger.info("Integrating %d-dimensional field to t=%g with %s", x0.size, cfg.t_end, cfg.method)
    if cfg.method == DP54_ADAPTIVE:
        states, stats = _integrate_dp54(field, x0, cfg, grid, project, guard)
    else:
        states, stats = _integrate_rk4(field, x0, cfg, grid, project, guard)
    meta = {
        'integrator': cfg.method,
        'rel_tol': cfg.rel_tol,
        'abs_tol': cfg.abs_tol,
        'n_rhs_evals': field.calls,
        **stats,
    }
    logger.debug("Integration finished: %s", meta)
    return Trajectory(times=grid, states=states, meta=meta)
