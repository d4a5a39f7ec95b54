"""
Time-averaged regret of replicator trajectories.

Replicator dynamics is follow-the-regularized-leader with the entropic
regularizer: the cumulative payoff vector is

    y(t) = y(0) + int_0^t A p(s) ds,   y(0) = 0,

and the time-averaged regret against the best fixed pure strategy is

    R(T) = max_i (1/T) [ y_i(T) - int_0^T p(s)^T A p(s) ds ].

Payoffs accrue on the game clock. A conjugate-time trajectory runs the
same orbit on the source clock tau, with dt = dtau / p_m, so its payoffs
are integrated against dtau / p_m and T is the elapsed game time. On either
clock the cumulative regret against strategy i equals ln(p_i(T) / p_i(0)).
"""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from src.core.errors import ParameterError, ShapeError
from src.core.fields import CONJUGATE, GAME, TIME_MODES
from src.core.types import PayoffMatrix, Trajectory

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RegretSeries:
    """
    Args:
        times: Sample times T > 0 on the trajectory's own clock.
        avg_regret: Time-averaged regret at each T.
        best_action: 1-based index of the best fixed strategy in hindsight.
        cumulative_payoffs: y(T) per strategy, shape (len(times), m).
        game_times: Elapsed game time at each sample; equal to times minus
            the start time for game-time trajectories.
    """
    times: np.ndarray
    avg_regret: np.ndarray
    best_action: np.ndarray
    cumulative_payoffs: np.ndarray
    game_times: np.ndarray = None

    def __post_init__(self):
        if self.game_times is None:
            object.__setattr__(self, 'game_times', np.asarray(self.times, dtype=float))

    @property
    def cumulative_regret(self) -> np.ndarray:
        """T * R(T) on the game clock."""
        return self.game_times * self.avg_regret

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            't': self.times,
            'avg_regret': self.avg_regret,
            'best_action': self.best_action.astype(int),
        })


def _check_dims(game: PayoffMatrix, traj: Trajectory):
    if traj.dim != game.m:
        raise ShapeError(f"trajectory has dimension {traj.dim} but the game has {game.m} strategies")


def _resolve_time_mode(traj: Trajectory, time_mode) -> str:
    time_mode = time_mode or traj.meta.get('time_mode', GAME)
    if time_mode not in TIME_MODES:
        raise ParameterError(f"unknown time mode {time_mode!r}; expected one of {TIME_MODES}")
    return time_mode


def _clock_rate(traj: Trajectory, time_mode: str) -> np.ndarray:
    """dt_game / dt along the samples: 1 in game time, 1 / p_m in conjugate time."""
    if time_mode == CONJUGATE:
        return 1.0 / traj.states[:, -1]
    return np.ones(len(traj))


def cumulative_payoffs(game: PayoffMatrix, traj: Trajectory, time_mode: str = None) -> np.ndarray:
    """
    Cumulative payoff vector y(t) at every sample, by composite trapezoidal
    quadrature of A p(s) over the game clock with y(t_0) = 0.

    Args:
        game: The payoff matrix.
        traj: Replicator trajectory on the simplex of the game.
        time_mode: Clock the trajectory was sampled on; read from
            traj.meta['time_mode'] when omitted, defaulting to 'game'.

    Returns:
        Array of shape (len(traj), m).
    """
    _check_dims(game, traj)
    rate = _clock_rate(traj, _resolve_time_mode(traj, time_mode))
    payoffs = (traj.states @ game.A.T) * rate[:, None]
    return cumulative_trapezoid(payoffs, traj.times, axis=0, initial=0.0)


def time_avg_regret(game: PayoffMatrix, traj: Trajectory, time_mode: str = None) -> RegretSeries:
    """
    Time-averaged regret of a trajectory against every fixed pure strategy.

    Ties in the best action go to the smallest index. The first sample
    (T = 0) is omitted. Conjugate-time trajectories are averaged over the
    elapsed game time, so the same orbit gives the same regret on either
    clock.
    """
    _check_dims(game, traj)
    if len(traj) < 2:
        raise ParameterError("regret needs a trajectory with at least two samples")
    time_mode = _resolve_time_mode(traj, time_mode)
    rate = _clock_rate(traj, time_mode)
    y = cumulative_payoffs(game, traj, time_mode)
    realized = np.einsum('ti,ij,tj->t', traj.states, game.A, traj.states) * rate
    earned = cumulative_trapezoid(realized, traj.times, initial=0.0)
    elapsed = cumulative_trapezoid(rate, traj.times, initial=0.0)[1:]
    gaps = y[1:] - earned[1:, None]
    best = np.argmax(gaps, axis=1)
    avg = gaps[np.arange(best.size), best] / elapsed
    logger.debug("Final time-averaged regret %.3e (strategy %d, %s time)", avg[-1], best[-1] + 1, time_mode)
    return RegretSeries(times=traj.times[1:].copy(), avg_regret=avg, best_action=best + 1,
                        cumulative_payoffs=y[1:], game_times=elapsed)


def regret_bound(p0) -> float:
    """
    max_i ln(1 / p_i(0)): along a replicator orbit the cumulative regret
    T * R(T), with T measured on the game clock, never exceeds this value.
    """
    p0 = np.asarray(p0, dtype=float)
    return float(np.max(-np.log(p0)))


def regret_at(series: RegretSeries, T: float) -> float:
    """avg_regret at the sample nearest to T on the trajectory's own clock."""
    return float(series.avg_regret[int(np.argmin(np.abs(series.times - T)))])
