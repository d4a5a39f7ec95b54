"""
Right-hand-side evaluators for GLV, LV and replicator dynamics.

All evaluators are pure functions of their arguments.
"""
import numpy as np

from src.core.errors import DomainError, ParameterError, RangeError, ShapeError
from src.core.types import GlvSystem, LvSystem, PayoffMatrix, PolynomialField

SIMPLEX_TOL = 1e-9
GAME = 'game'
CONJUGATE = 'conjugate'
TIME_MODES = (GAME, CONJUGATE)

_LOG_MAX = np.log(np.finfo(float).max)


def require_positive(x, n: int, name: str = 'x') -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ShapeError(f"{name} must have length {n}, got shape {x.shape}")
    bad = np.flatnonzero(~(x > 0))
    if bad.size:
        raise DomainError(f"{name}[{bad[0]}] = {x[bad[0]]!r} is not strictly positive", index=int(bad[0]))
    return x


def eval_monomials(B, x) -> np.ndarray:
    """
    Evaluates the monomials prod_k x_k ** B_jk for every row j of B.

    Exponents are real, so the products are computed in log space as
    exp(B @ log x); x must be strictly positive.
    """
    B = np.asarray(B, dtype=float)
    x = require_positive(x, B.shape[1])
    logs = B @ np.log(x)
    over = np.flatnonzero(logs > _LOG_MAX)
    if over.size:
        raise RangeError(f"monomial {over[0]} overflows (log value {logs[over[0]]:.6g})", index=int(over[0]))
    return np.exp(logs)


def eval_glv_rhs(sys: GlvSystem, x) -> np.ndarray:
    """
    Evaluates the generalized Lotka-Volterra field.

        x_i' = x_i * (lam_i + sum_j A_ij * prod_k x_k ** B_jk)

    Args:
        sys: The GLV system.
        x: A strictly positive state of length sys.n.

    Returns:
        The time derivative at x.
    """
    x = require_positive(x, sys.n)
    return x * sys.fitness(x)


def eval_lv_rhs(sys: LvSystem, z) -> np.ndarray:
    """z_i' = z_i * sum_j A_hat_ij z_j."""
    z = require_positive(z, sys.d, name='z')
    return z * (sys.A_hat @ z)


def check_simplex_point(p, m: int, tol: float = SIMPLEX_TOL) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (m,):
        raise ShapeError(f"simplex point must have length {m}, got shape {p.shape}")
    bad = np.flatnonzero(~(p > 0))
    if bad.size:
        raise DomainError(f"p[{bad[0]}] = {p[bad[0]]!r} is not in the simplex interior", index=int(bad[0]))
    if abs(p.sum() - 1.0) > tol:
        raise DomainError(f"components sum to {p.sum()!r}, not 1 within {tol:g}")
    return p


def replicator_velocity(A, p) -> np.ndarray:
    """
    p_i * ((A p)_i - p.A p / sum(p)) without any domain checks.

    The mean payoff is normalized by the component sum, which equals one on
    the simplex, so the result sums to zero up to round-off even when p has
    drifted slightly off the simplex.
    """
    payoffs = A @ p
    mean = (p @ payoffs) / p.sum()
    return p * (payoffs - mean)


def eval_replicator_rhs(game: PayoffMatrix, p, time_mode: str = GAME) -> np.ndarray:
    """
    Evaluates replicator dynamics on a matrix game.

    In 'game' mode this is p_i' = p_i((A p)_i - p^T A p). In 'conjugate' mode
    the field is divided by the last component p_m, which puts the replicator
    flow on the same clock as the Lotka-Volterra system it embeds.

    Args:
        game: The payoff matrix.
        p: A point in the relative interior of the simplex.
        time_mode: 'game' or 'conjugate'.

    Returns:
        A tangent vector (components sum to zero).
    """
    if time_mode not in TIME_MODES:
        raise ParameterError(f"unknown time mode {time_mode!r}; expected one of {TIME_MODES}")
    p = check_simplex_point(p, game.m)
    velocity = replicator_velocity(game.A, p)
    if time_mode == CONJUGATE:
        velocity = velocity / p[-1]
    return velocity


def expected_payoff_two_player(A12, x1, x2) -> float:
    """Payoff x1^T A12 x2 received by agent 1."""
    A12 = np.asarray(A12, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if A12.ndim != 2 or A12.shape != (x1.shape[0], x2.shape[0]) or x1.ndim != 1 or x2.ndim != 1:
        raise ShapeError(
            f"payoff matrix of shape {A12.shape} does not conform to strategies of "
            f"shapes {x1.shape} and {x2.shape}"
        )
    return float(x1 @ A12 @ x2)


def replicator_field_polynomial(game: PayoffMatrix) -> PolynomialField:
    """
    Writes the replicator field of a game as a polynomial field on R^m.

        h_i = y_i (A y)_i (sum_k y_k) - y_i y^T A y

    The first term is homogenized with sum_k y_k so that sum_i h_i vanishes
    identically; on the simplex the field is ordinary replicator dynamics.
    """
    m = game.m
    coords = []
    for i in range(m):
        poly = []
        for j in range(m):
            for k in range(m):
                exps = [0] * m
                exps[i] += 1
                exps[j] += 1
                exps[k] += 1
                poly.append((game.A[i, j], tuple(exps)))
        for k in range(m):
            for l in range(m):
                exps = [0] * m
                exps[i] += 1
                exps[k] += 1
                exps[l] += 1
                poly.append((-game.A[k, l], tuple(exps)))
        coords.append(poly)
    return PolynomialField(n=m, coords=tuple(coords)).simplified()
