"""
Domain types: GLV and LV systems, polynomial fields on the simplex, payoff
matrices, game embeddings and sampled trajectories.

All types are immutable. Array fields are copied to float arrays on
construction and marked read-only, so instances can be shared freely between
concurrent simulations.
"""
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from src.core.errors import ParameterError, ShapeError


def _frozen(values, ndim) -> np.ndarray:
    array = np.array(values, dtype=float, ndmin=ndim)
    if array.ndim != ndim:
        raise ShapeError(f"expected a {ndim}-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GlvSystem:
    """
    Generalized Lotka-Volterra system on the open positive orthant.

        x_i' = x_i * (lam_i + sum_j A_ij * prod_k x_k ** B_jk)

    Args:
        lam: Intrinsic growth rates, length n.
        A: Monomial coefficients, shape (n, m').
        B: Monomial exponents, shape (m', n). Entries may be negative or non-integer.
    """
    lam: np.ndarray
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'lam', _frozen(self.lam, 1))
        object.__setattr__(self, 'A', _frozen(self.A, 2))
        object.__setattr__(self, 'B', _frozen(self.B, 2))
        n, k = self.lam.shape[0], self.A.shape[1]
        if self.A.shape[0] != n:
            raise ShapeError(f"A has shape {self.A.shape}, expected {n} rows to match lam")
        if self.B.shape != (k, n):
            raise ShapeError(f"B has shape {self.B.shape}, expected ({k}, {n})")

    @property
    def n(self) -> int:
        return self.lam.shape[0]

    @property
    def n_monomials(self) -> int:
        return self.B.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GlvSystem):
            return NotImplemented
        return (np.array_equal(self.lam, other.lam) and np.array_equal(self.A, other.A)
                and np.array_equal(self.B, other.B))

    def fitness(self, x) -> np.ndarray:
        """Per-capita growth rates M_i(x) = lam_i + sum_j A_ij x^B_j."""
        from src.core.fields import eval_monomials
        return self.lam + self.A @ eval_monomials(self.B, x)


@dataclass(frozen=True, eq=False)
class LvSystem:
    """Lotka-Volterra system z_i' = z_i * (A_hat z)_i with no intrinsic growth term."""
    A_hat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'A_hat', _frozen(self.A_hat, 2))

    @property
    def d(self) -> int:
        return self.A_hat.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LvSystem):
            return NotImplemented
        return np.array_equal(self.A_hat, other.A_hat)

    def as_glv(self) -> GlvSystem:
        return GlvSystem(lam=np.zeros(self.d), A=self.A_hat, B=np.eye(self.d))


Monomial = tuple  # (coefficient: float, exponents: tuple[int, ...])


def _canonical(poly, n) -> tuple:
    totals = defaultdict(float)
    for coefficient, exponents in poly:
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != n:
            raise ShapeError(f"monomial exponent vector {exponents} does not have length {n}")
        if any(e < 0 for e in exponents):
            raise ParameterError(f"polynomial exponents must be non-negative, got {exponents}")
        totals[exponents] += float(coefficient)
    return tuple((c, e) for e, c in sorted(totals.items()) if c != 0.0)


@dataclass(frozen=True)
class PolynomialField:
    """
    Polynomial vector field on R^n, meant to be tangent to the simplex.

    Each coordinate is a sequence of (coefficient, exponents) monomials, where
    exponents is a length-n tuple of non-negative integers.
    """
    n: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(tuple((float(c), tuple(int(e) for e in exps)) for c, exps in poly)
                       for poly in self.coords)
        if len(coords) != self.n:
            raise ShapeError(f"expected {self.n} coordinate polynomials, got {len(coords)}")
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def zero(cls, n: int) -> 'PolynomialField':
        return cls(n=n, coords=tuple(() for _ in range(n)))

    def simplified(self) -> 'PolynomialField':
        return PolynomialField(n=self.n, coords=tuple(_canonical(p, self.n) for p in self.coords))

    def coordinate_sum(self) -> tuple:
        """Canonical form of sum_i h_i (empty for a field tangent to the simplex)."""
        return _canonical([m for poly in self.coords for m in poly], self.n)

    def degree(self) -> int:
        return max((sum(e) for poly in self.coords for _, e in poly), default=0)

    def evaluate(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise ShapeError(f"expected a point of length {self.n}, got shape {y.shape}")
        return np.array([
            sum(c * np.prod(y ** np.array(e, dtype=float)) for c, e in poly)
            for poly in self.coords
        ], dtype=float)

    def jacobian(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise ShapeError(f"expected a point of length {self.n}, got shape {y.shape}")
        jac = np.zeros((self.n, self.n))
        for i, poly in enumerate(self.coords):
            for c, e in poly:
                e = np.array(e, dtype=float)
                for k in np.flatnonzero(e):
                    lowered = e.copy()
                    lowered[k] -= 1
                    jac[i, k] += c * e[k] * np.prod(y ** lowered)
        return jac


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """Symmetric single-population matrix game."""
    A: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'A', _frozen(self.A, 2))

    @property
    def m(self) -> int:
        return self.A.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PayoffMatrix):
            return NotImplemented
        return np.array_equal(self.A, other.A)


@dataclass(frozen=True, eq=False)
class GameEmbedding:
    """
    A payoff matrix together with the exponent matrices defining the
    diffeomorphism f from R^n_++ into the simplex interior and its inverse.
    """
    game: PayoffMatrix
    n: int
    B_bar: np.ndarray
    B_tilde: np.ndarray
    B_tilde_inv: np.ndarray

    def __post_init__(self):
        for name in ('B_bar', 'B_tilde', 'B_tilde_inv'):
            object.__setattr__(self, name, _frozen(getattr(self, name), 2))

    @property
    def m(self) -> int:
        return self.game.m

    def __eq__(self, other):
        if not isinstance(other, GameEmbedding):
            return NotImplemented
        return (self.game == other.game and self.n == other.n
                and np.array_equal(self.B_bar, other.B_bar)
                and np.array_equal(self.B_tilde, other.B_tilde)
                and np.array_equal(self.B_tilde_inv, other.B_tilde_inv))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Sampled orbit of a flow.

    Args:
        times: Strictly increasing sample times.
        states: Array of shape (len(times), k).
        meta: Integrator name, tolerances and step statistics.
    """
    times: np.ndarray
    states: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'times', _frozen(self.times, 1))
        object.__setattr__(self, 'states', _frozen(self.states, 2))
        if self.states.shape[0] != self.times.shape[0]:
            raise ShapeError(
                f"{self.times.shape[0]} sample times but {self.states.shape[0]} states"
            )

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def __len__(self):
        return self.times.shape[0]

    def to_frame(self) -> pd.DataFrame:
        columns = [f's{i + 1}' for i in range(self.dim)]
        df = pd.DataFrame(np.asarray(self.states), columns=columns)
        df.insert(0, 't', np.asarray(self.times))
        return df

    @classmethod
    def from_frame(cls, df: pd.DataFrame, meta: dict = None) -> 'Trajectory':
        if 't' not in df.columns:
            raise ShapeError("trajectory frame has no 't' column")
        state_columns = [c for c in df.columns if c != 't']
        return cls(times=df['t'].to_numpy(dtype=float),
                   states=df[state_columns].to_numpy(dtype=float),
                   meta=dict(meta or {}))
