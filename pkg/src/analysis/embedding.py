"""
Compiles a GLV system into a matrix game whose replicator dynamics embed it.

The pipeline runs

    absorb_lambda -> ensure_column_rank -> pad_to_square
        -> quasimonomial_transform -> compactify

and records the exponent matrices needed for the diffeomorphism

    f(x)_i = z_i / N,  f(x)_m = 1 / N,  z_i = prod_k x_k ** B_bar_ik,  N = 1 + sum_j z_j

and its inverse x_i = prod_k (p_k / p_m) ** B_tilde_inv_ik.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from src.core.errors import CompletionError, DomainError, ParameterError, ShapeError, SingularMatrixError
from src.core.fields import require_positive, eval_glv_rhs, eval_monomials
from src.core.types import GameEmbedding, GlvSystem, LvSystem, PayoffMatrix, Trajectory

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e12
INVERSE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PaddedGlv:
    """
    Square GLV system on R^(m-1)_++ whose first n coordinates reproduce the
    source system when the remaining (dummy) coordinates are held at 1.
    """
    A_tilde: np.ndarray
    B_tilde: np.ndarray
    n: int

    def __post_init__(self):
        for name in ('A_tilde', 'B_tilde'):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        if self.A_tilde.shape != self.B_tilde.shape or self.A_tilde.shape[0] != self.A_tilde.shape[1]:
            raise ShapeError(
                f"padded matrices must be square and equal in shape, got {self.A_tilde.shape} "
                f"and {self.B_tilde.shape}"
            )

    @property
    def size(self) -> int:
        return self.A_tilde.shape[0]

    def to_glv(self) -> GlvSystem:
        return GlvSystem(lam=np.zeros(self.size), A=self.A_tilde, B=self.B_tilde)


def column_rank(B) -> int:
    """Numerical column rank via QR with column pivoting."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.size == 0:
        return 0
    R = linalg.qr(B, mode='r', pivoting=True)[0]
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        return 0
    tol = max(B.shape) * np.finfo(float).eps * diag[0]
    return int(np.sum(diag > tol))


def absorb_lambda(sys: GlvSystem) -> GlvSystem:
    """
    Moves the intrinsic growth rates into the monomial terms.

    A non-zero lam becomes an extra column of A paired with the constant
    monomial (a zero row appended to B). Systems with lam = 0 are returned
    unchanged.
    """
    if not np.any(sys.lam):
        return sys
    A = np.hstack([sys.A, sys.lam[:, None]])
    B = np.vstack([sys.B, np.zeros((1, sys.n))])
    logger.debug("Absorbed growth rates into constant monomial %d", B.shape[0] - 1)
    return GlvSystem(lam=np.zeros(sys.n), A=A, B=B)


def ensure_column_rank(sys: GlvSystem) -> GlvSystem:
    """
    Appends standard basis exponent rows e_i (with zero coefficient columns)
    until B has column rank n. The vector field is unchanged.
    """
    if np.any(sys.lam):
        raise ParameterError("ensure_column_rank expects a system with lam = 0; call absorb_lambda first")
    B = sys.B
    A = sys.A
    rank = column_rank(B)
    for i in range(sys.n):
        if rank == sys.n:
            break
        candidate = np.vstack([B, np.eye(sys.n)[i]])
        if column_rank(candidate) > rank:
            B = candidate
            A = np.hstack([A, np.zeros((sys.n, 1))])
            rank += 1
            logger.debug("Added exponent row e_%d to reach rank %d", i + 1, rank)
    if B is sys.B:
        return sys
    return GlvSystem(lam=sys.lam, A=A, B=B)


def _pivot_rows(B) -> list:
    """Smallest-index rows of B that are linearly independent, taken greedily."""
    rows = []
    for j in range(B.shape[0]):
        if column_rank(B[rows + [j]].T) == len(rows) + 1:
            rows.append(j)
            if len(rows) == B.shape[1]:
                break
    return rows


def pad_to_square(sys: GlvSystem) -> PaddedGlv:
    """
    Pads a rank-n GLV system to a square system on R^(m-1)_++.

    A is padded below with zero rows. B is completed with standard basis
    columns e_j, one for every monomial j outside the greedily chosen pivot
    rows of B, so B_tilde is nonsingular with |det B_tilde| equal to the
    determinant of the pivot block.

    Returns:
        The PaddedGlv (A_tilde, B_tilde, n).
    """
    n = sys.n
    size = sys.n_monomials
    if np.any(sys.lam):
        raise ParameterError("pad_to_square expects a system with lam = 0")
    if size < n:
        raise CompletionError(f"{size} monomials cannot span {n} dimensions")
    pivots = _pivot_rows(sys.B)
    if len(pivots) < n:
        raise CompletionError(f"exponent matrix has rank {len(pivots)} < {n}; run ensure_column_rank first")
    completion = [j for j in range(size) if j not in pivots]
    B_tilde = np.hstack([sys.B, np.eye(size)[:, completion]])
    A_tilde = np.vstack([sys.A, np.zeros((size - n, size))])
    condition = np.linalg.cond(B_tilde)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise CompletionError(
            f"standard basis completion of B is singular (condition number {condition:.3e})"
        )
    logger.debug("Pivot monomials %s, completion columns e_%s", pivots, [j + 1 for j in completion])
    return PaddedGlv(A_tilde=A_tilde, B_tilde=B_tilde, n=n)


def invert_exponents(B_tilde) -> np.ndarray:
    B_tilde = np.asarray(B_tilde, dtype=float)
    condition = np.linalg.cond(B_tilde)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise SingularMatrixError('B_tilde', condition)
    C = linalg.inv(B_tilde)
    residual = np.max(np.abs(B_tilde @ C - np.eye(B_tilde.shape[0])))
    if residual > INVERSE_TOL:
        raise SingularMatrixError('B_tilde', condition)
    return C


def quasimonomial_transform(p: PaddedGlv) -> LvSystem:
    """
    Applies the quasimonomial change of variables with C = B_tilde^-1, which
    turns the padded GLV system into the LV system A_hat = B_tilde A_tilde.
    """
    invert_exponents(p.B_tilde)
    return LvSystem(A_hat=p.B_tilde @ p.A_tilde)


def compactify(lv: LvSystem) -> PayoffMatrix:
    """Adds the compactifying species z_m = 1: a zero last row and column."""
    A = np.zeros((lv.d + 1, lv.d + 1))
    A[:lv.d, :lv.d] = lv.A_hat
    return PayoffMatrix(A=A)


def embed(sys: GlvSystem) -> GameEmbedding:
    """
    Builds the matrix game embedding a GLV system.

    Args:
        sys: The source GLV system on R^n_++.

    Returns:
        The GameEmbedding holding the payoff matrix and the exponent matrices
        of the forward and inverse diffeomorphisms.
    """
    logger.info("Embedding GLV system with n=%d and %d monomials", sys.n, sys.n_monomials)
    absorbed = ensure_column_rank(absorb_lambda(sys))
    padded = pad_to_square(absorbed)
    B_tilde_inv = invert_exponents(padded.B_tilde)
    lv = quasimonomial_transform(padded)
    game = compactify(lv)
    logger.info("Built %dx%d game", game.m, game.m)
    return GameEmbedding(game=game, n=sys.n, B_bar=absorbed.B,
                         B_tilde=padded.B_tilde, B_tilde_inv=B_tilde_inv)


def forward_map(e: GameEmbedding, x) -> np.ndarray:
    """
    Maps a source state into the simplex interior.

    Monomials are evaluated in log space and the normalizer is summed with
    compensated summation; the last component is 1 minus the others so the
    result lies on the simplex exactly.
    """
    z = eval_monomials(e.B_bar, x)
    N = 1.0 + math.fsum(z)
    p = np.empty(e.m)
    p[:-1] = z / N
    p[-1] = 1.0 - math.fsum(p[:-1])
    return p


def inverse_map(e: GameEmbedding, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (e.m,):
        raise ShapeError(f"simplex point must have length {e.m}, got shape {p.shape}")
    bad = np.flatnonzero(~(p > 0))
    if bad.size:
        raise DomainError(f"p[{bad[0]}] = {p[bad[0]]!r} is not in the simplex interior", index=int(bad[0]))
    log_ratios = np.log(p[:-1]) - np.log(p[-1])
    return np.exp(e.B_tilde_inv[:e.n] @ log_ratios)


def pushforward_field(e: GameEmbedding, sys: GlvSystem, x, step: float = 1e-6) -> np.ndarray:
    """
    Central-difference directional derivative of forward_map along the GLV
    field at x, i.e. Df(x) . V(x).
    """
    x = require_positive(x, sys.n)
    v = eval_glv_rhs(sys, x)
    scale = np.max(np.abs(v))
    if scale == 0.0:
        return np.zeros(e.m)
    u = v / scale
    h = step * max(1.0, np.max(x))
    h = min(h, 0.5 * np.min(x))
    return scale * (forward_map(e, x + h * u) - forward_map(e, x - h * u)) / (2.0 * h)


def recover(e: GameEmbedding, traj: Trajectory) -> Trajectory:
    """Applies inverse_map to every sample; the sample index is reported on failure."""
    states = np.empty((len(traj), e.n))
    for k, p in enumerate(traj.states):
        try:
            states[k] = inverse_map(e, p)
        except DomainError as err:
            raise DomainError(f"sample {k} (t={traj.times[k]!r}): {err}", index=k) from err
    return Trajectory(times=traj.times, states=states, meta=dict(traj.meta, recovered=True))


def embedding_error(source: Trajectory, embedded: Trajectory, e: GameEmbedding) -> float:
    """
    Empirical epsilon of an approximate embedding: the largest sup-norm gap
    between the source orbit and the pulled-back embedded orbit.
    """
    if len(source) != len(embedded) or not np.allclose(source.times, embedded.times, rtol=0, atol=1e-12):
        raise ShapeError("source and embedded trajectories must share their sample times")
    recovered = recover(e, embedded)
    return float(np.max(np.abs(recovered.states - source.states)))
