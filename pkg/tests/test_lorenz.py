import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.analysis.embedding import forward_map, recover
from src.core.fields import CONJUGATE, GAME
from src.data.lorenz import (DEFAULT_X0, LORENZ_EXPONENTS, LorenzParams, default_shift_radius,
                             lorenz_rhs, lorenz_symbolic_matrix, min_shifted_coordinate,
                             reference_lorenz, shifted_lorenz_glv)
from src.dynamics.integrators import IntegratorConfig
from src.dynamics.simulate import simulate_glv, simulate_replicator

UNIT_START = (1.0, 1.0, 1.0)


def test_default_shift_radius():
    assert default_shift_radius(10.0, 28.0, 8.0 / 3.0) == 76.0
    assert default_shift_radius(20.0, 56.0, 8.0 / 3.0) == 152.0
    assert LorenzParams().r == 76.0


def test_derived_parameters():
    params = LorenzParams(r=100.0)
    assert params.eta == 128.0
    assert params.alpha == 100.0 - 2800.0 - 10000.0
    assert params.mu == pytest.approx(10000.0 + 800.0 / 3.0)


def test_parameters_must_be_positive():
    with pytest.raises(ValueError):
        LorenzParams(sigma=-1.0)
    with pytest.raises(ValueError):
        LorenzParams(r=0.0)


def test_glv_structure(lorenz_params):
    sys = shifted_lorenz_glv(lorenz_params)
    assert sys.A.shape == (3, 10)
    assert_array_equal(sys.B, LORENZ_EXPONENTS)
    assert_array_equal(sys.lam, np.zeros(3))
    assert_array_equal(sys.B[-1], [0.0, 0.0, 0.0])


def test_symbolic_matrix_zero_rows(lorenz_params):
    M = lorenz_symbolic_matrix(lorenz_params)
    assert M.shape == (11, 11)
    assert_array_equal(M[9:], 0.0)
    assert_array_equal(M[:, 10], 0.0)


def test_lorenz_rhs_at_ones(lorenz_params):
    assert_allclose(lorenz_rhs([1.0, 1.0, 1.0], lorenz_params), [0.0, 26.0, 1.0 - 8.0 / 3.0])


def test_reference_from_origin_is_constant(lorenz_params):
    traj = reference_lorenz(lorenz_params, [0.0, 0.0, 0.0], IntegratorConfig(t_end=1.0))
    assert_allclose(traj.states, lorenz_params.r)


def test_reference_z_axis_decays(lorenz_params):
    traj = reference_lorenz(lorenz_params, [0.0, 0.0, 5.0], IntegratorConfig(t_end=1.0))
    assert_allclose(traj.states[:, :2], lorenz_params.r)
    assert_allclose(traj.states[:, 2] - lorenz_params.r, 5.0 * np.exp(-lorenz_params.beta * traj.times),
                    atol=1e-8)


def test_reference_matches_glv_simulation(lorenz_params):
    cfg = IntegratorConfig(t_end=5.0).with_tolerance(1e-12)
    oracle = reference_lorenz(lorenz_params, UNIT_START, cfg)
    glv = simulate_glv(shifted_lorenz_glv(lorenz_params), oracle.states[0], cfg)
    assert np.max(np.abs(glv.states - oracle.states)) < 1e-6


@pytest.mark.parametrize('x0', [UNIT_START, DEFAULT_X0])
def test_shift_radius_keeps_the_orbit_positive(lorenz_params, x0):
    traj = reference_lorenz(lorenz_params, x0, IntegratorConfig(t_end=100.0))
    assert min_shifted_coordinate(traj) > 0


def test_game_conjugacy_on_a_short_horizon(lorenz_params, lorenz_embedding):
    cfg = IntegratorConfig(t_end=2.0).with_tolerance(1e-12)
    oracle = reference_lorenz(lorenz_params, UNIT_START, cfg)
    p0 = forward_map(lorenz_embedding, oracle.states[0])
    embedded = simulate_replicator(lorenz_embedding.game, p0, CONJUGATE, cfg)
    assert np.max(np.abs(recover(lorenz_embedding, embedded).states - oracle.states)) < 1e-3


def test_game_mode_orbit_stays_interior(lorenz_params, lorenz_embedding):
    p0 = forward_map(lorenz_embedding, np.full(3, lorenz_params.r + 1))
    traj = simulate_replicator(lorenz_embedding.game, p0, GAME, IntegratorConfig(t_end=20.0))
    assert np.min(traj.states) > 1e-30
    assert np.max(np.abs(traj.states.sum(axis=1) - 1.0)) < 1e-9
    assert min_shifted_coordinate(recover(lorenz_embedding, traj)) > 0
