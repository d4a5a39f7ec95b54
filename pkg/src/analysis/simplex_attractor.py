"""
Turns a polynomial vector field on the simplex into a GLV system on R^n_++
that has the simplex as a globally attracting, forward invariant set.

Steps:
    1. boundary_correct: p_i = p_hat_i + delta (1/n - y_i) for i < n and
       p_n = -sum_{i<n} p_i, so the field points strictly inward on each face.
    2. lift_to_glv: y_i' = y_i (1 - |y|_1) + p_i(y). On the simplex the lift
       equals p; off it |y|_1 follows the logistic equation.
    3. gronwall_epsilon: sup-norm bound (2 delta / L)(e^(L T) - 1) between
       the flow of the original field and the flow of the corrected one.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.analysis.embedding import embed
from src.core.errors import ParameterError, ShapeError
from src.core.types import GameEmbedding, GlvSystem, PolynomialField
from src.core.validation import validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrectionParams:
    delta: float
    n: int

    def __post_init__(self):
        if not self.delta > 0:
            raise ParameterError(f"delta must be positive, got {self.delta!r}")
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n!r}")


@dataclass(frozen=True)
class SimplexEmbedding:
    corrected: PolynomialField
    glv: GlvSystem
    embedding: GameEmbedding


def _require_tangent(field: PolynomialField):
    report = validate(field)
    if not report.passed:
        raise ParameterError(f"polynomial field is invalid: {report.failures()}")


def _unit(n, i):
    exps = [0] * n
    exps[i] = 1
    return tuple(exps)


def boundary_correct(field: PolynomialField, delta: float) -> PolynomialField:
    """
    Adds the inward-pointing correction delta * (1/n - y_i).

    Args:
        field: A polynomial field tangent to the simplex.
        delta: Approximation slack, strictly positive.

    Returns:
        The corrected field, again tangent to the simplex.
    """
    params = CorrectionParams(delta=delta, n=field.n)
    _require_tangent(field)
    n = params.n
    constant = (0,) * n
    coords = []
    for i in range(n - 1):
        poly = list(field.coords[i])
        poly.append((delta / n, constant))
        poly.append((-delta, _unit(n, i)))
        coords.append(poly)
    last = [(-c, e) for poly in coords for c, e in poly]
    coords.append(last)
    corrected = PolynomialField(n=n, coords=tuple(coords)).simplified()
    logger.debug("Boundary-corrected %d-dimensional field with delta=%g", n, delta)
    return corrected


def lift_to_glv(field: PolynomialField) -> GlvSystem:
    """
    Lifts a tangent polynomial field to the GLV system y_i' = y_i pi(y) + p_i(y)
    with pi(y) = 1 - |y|_1.

    Per-capita rates are M_i(y) = 1 - sum_j y_j + p_i(y) / y_i, a generalized
    polynomial whose exponents may include -1.
    """
    _require_tangent(field)
    n = field.n
    # Monomial exponents -> column index. The -y_j terms come first.
    columns = {}
    entries = []

    def column(exps):
        if exps not in columns:
            columns[exps] = len(columns)
        return columns[exps]

    for j in range(n):
        for i in range(n):
            entries.append((i, column(_unit(n, j)), -1.0))
    for i, poly in enumerate(field.simplified().coords):
        for c, e in poly:
            lowered = list(e)
            lowered[i] -= 1
            entries.append((i, column(tuple(lowered)), c))

    A = np.zeros((n, len(columns)))
    for i, j, c in entries:
        A[i, j] += c
    B = np.array(list(columns.keys()), dtype=float)
    logger.info("Lifted %d-dimensional field to a GLV system with %d monomials", n, B.shape[0])
    return GlvSystem(lam=np.ones(n), A=A, B=B)


def gronwall_epsilon(delta: float, L: float, T: float) -> float:
    """
    Flow divergence bound (2 delta / L)(e^(L T) - 1).

    Two fields that differ by at most 2 delta in sup norm, one of them
    L-Lipschitz, produce flows that stay within this distance over [0, T].
    """
    for name, value in (('delta', delta), ('L', L), ('T', T)):
        if not value > 0:
            raise ParameterError(f"{name} must be positive, got {value!r}")
    return 2.0 * delta / L * math.expm1(L * T)


def sample_simplex(n: int, count: int, seed: int = 0) -> np.ndarray:
    """
    Fixed-seed Dirichlet(1, ..., 1) sample of the simplex.

    Points are normalized standard exponential draws, generated row by row,
    so the first k points of a larger sample equal a sample of size k.
    """
    rng = np.random.default_rng(seed)
    draws = rng.standard_exponential((count, n))
    return draws / draws.sum(axis=1, keepdims=True)


def lipschitz_estimate(field: PolynomialField, sample_count: int, seed: int = 0) -> float:
    """
    Empirical sup-norm Lipschitz constant of a field on the simplex.

    Returns the largest infinity-operator norm (max absolute row sum) of the
    Jacobian over the sample. This is a lower bound on the true constant.
    """
    if sample_count < 1:
        raise ParameterError("sample_count must be positive")
    points = sample_simplex(field.n, sample_count, seed)
    return max(float(np.max(np.sum(np.abs(field.jacobian(y)), axis=1))) for y in points)


def approximation_gap(h: PolynomialField, p: PolynomialField, sample_count: int = 1000, seed: int = 0) -> float:
    """Empirical sup over the simplex of |h(y) - p(y)|_inf."""
    if h.n != p.n:
        raise ShapeError(f"fields have dimensions {h.n} and {p.n}")
    points = sample_simplex(h.n, sample_count, seed)
    return max(float(np.max(np.abs(h.evaluate(y) - p.evaluate(y)))) for y in points)


def logistic_norm(s0: float, t):
    """Closed-form solution s(t) = s0 e^t / (1 - s0 + s0 e^t) of s' = s (1 - s)."""
    growth = np.exp(np.asarray(t, dtype=float))
    return s0 * growth / (1.0 - s0 + s0 * growth)


def embed_simplex_field(field: PolynomialField, delta: float) -> SimplexEmbedding:
    """
    Full chain for a field on the simplex: boundary correction, logistic lift,
    then the GLV -> matrix game embedding.
    """
    corrected = boundary_correct(field, delta)
    glv = lift_to_glv(corrected)
    return SimplexEmbedding(corrected=corrected, glv=glv, embedding=embed(glv))
