import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.analysis.embedding import embed, forward_map, pad_to_square, absorb_lambda, ensure_column_rank, recover
from src.cli.verify import orbit_distance
from src.core.errors import BoundaryCollisionError, DomainError
from src.core.fields import CONJUGATE, GAME
from src.core.types import GlvSystem, LvSystem, PayoffMatrix
from src.data.fixtures import competitive_glv, logistic_solution, rock_paper_scissors
from src.data.lorenz import LorenzParams, shifted_lorenz_glv
from src.dynamics.integrators import IntegratorConfig
from src.dynamics.simulate import simulate_glv, simulate_lv, simulate_replicator


def test_stationary_glv():
    sys = GlvSystem(lam=[0.0, 0.0], A=np.zeros((2, 1)), B=[[1.0, 1.0]])
    traj = simulate_glv(sys, [0.4, 2.0], IntegratorConfig(t_end=1.0))
    assert_array_equal(traj.states, np.tile([0.4, 2.0], (len(traj), 1)))
    assert traj.meta['system'] == 'glv'


def test_logistic_glv(logistic):
    traj = simulate_glv(logistic, [0.5], IntegratorConfig(t_end=5.0))
    assert_allclose(traj.states[:, 0], logistic_solution(0.5, traj.times), atol=1e-8)


def test_glv_collision_with_the_boundary():
    sys = GlvSystem(lam=[-50.0], A=np.zeros((1, 0)), B=np.zeros((0, 1)))
    with pytest.raises(BoundaryCollisionError):
        simulate_glv(sys, [1.0], IntegratorConfig(t_end=1.0))


def test_glv_rejects_non_positive_start(logistic):
    with pytest.raises(DomainError):
        simulate_glv(logistic, [-0.5], IntegratorConfig())


def test_lv_matches_its_glv_form():
    lv = LvSystem(A_hat=[[-1.0, 0.5], [-0.5, -1.0]])
    cfg = IntegratorConfig(t_end=2.0)
    assert_allclose(simulate_lv(lv, [0.3, 0.6], cfg).states,
                    simulate_glv(lv.as_glv(), [0.3, 0.6], cfg).states, atol=1e-12)


def test_shifted_lorenz_stays_in_the_orthant():
    params = LorenzParams()
    traj = simulate_glv(shifted_lorenz_glv(params), np.full(3, params.r + 1), IntegratorConfig(t_end=50.0))
    assert np.min(traj.states) > 0
    # trapping region of the classical attractor after the shift
    assert np.max(np.abs(traj.states - params.r)) < params.r


def test_zero_game_is_stationary():
    p0 = [0.2, 0.3, 0.5]
    traj = simulate_replicator(PayoffMatrix(A=np.zeros((3, 3))), p0, GAME, IntegratorConfig(t_end=1.0))
    assert_allclose(traj.states, np.tile(p0, (len(traj), 1)), atol=1e-15)


@pytest.mark.parametrize('time_mode', [GAME, CONJUGATE])
def test_replicator_stays_on_the_simplex(time_mode):
    traj = simulate_replicator(rock_paper_scissors(), [0.6, 0.3, 0.1], time_mode, IntegratorConfig(t_end=20.0))
    assert np.max(np.abs(traj.states.sum(axis=1) - 1.0)) < 1e-9
    assert np.min(traj.states) > 0
    assert traj.meta['time_mode'] == time_mode


def test_replicator_rejects_unknown_time_mode():
    with pytest.raises(ValueError):
        simulate_replicator(rock_paper_scissors(), [0.6, 0.3, 0.1], 'proper', IntegratorConfig())


def test_logistic_conjugacy(logistic_embedding):
    p0 = forward_map(logistic_embedding, [0.5])
    traj = simulate_replicator(logistic_embedding.game, p0, CONJUGATE, IntegratorConfig(t_end=10.0))
    x = recover(logistic_embedding, traj).states[:, 0]
    assert np.max(np.abs(x - logistic_solution(0.5, traj.times))) < 1e-6


def test_competitive_lv_conjugacy():
    sys = competitive_glv()
    e = embed(sys)
    cfg = IntegratorConfig(t_end=10.0)
    x0 = [0.3, 1.5]
    source = simulate_glv(sys, x0, cfg)
    embedded = simulate_replicator(e.game, forward_map(e, x0), CONJUGATE, cfg)
    assert np.max(np.abs(recover(e, embedded).states - source.states)) < 1e-6


def test_time_modes_trace_the_same_orbit(logistic_embedding):
    p0 = forward_map(logistic_embedding, [0.5])
    game_run = simulate_replicator(logistic_embedding.game, p0, GAME, IntegratorConfig(t_end=30.0))
    conj_run = simulate_replicator(logistic_embedding.game, p0, CONJUGATE, IntegratorConfig(t_end=15.0))
    assert orbit_distance(game_run.states, conj_run.states) < 1e-4


def test_padded_dummies_are_stationary(random_systems):
    sys = random_systems[0]
    padded = pad_to_square(ensure_column_rank(absorb_lambda(sys)))
    y0 = np.ones(padded.size)
    y0[:sys.n] = 0.9
    traj = simulate_glv(padded.to_glv(), y0, IntegratorConfig(t_end=0.5))
    assert np.max(np.abs(traj.states[:, sys.n:] - 1.0)) < 1e-10


def test_padded_system_reproduces_the_source(random_systems):
    sys = random_systems[0]
    padded = pad_to_square(ensure_column_rank(absorb_lambda(sys)))
    y0 = np.ones(padded.size)
    y0[:sys.n] = 0.9
    cfg = IntegratorConfig(t_end=0.5)
    assert_allclose(simulate_glv(padded.to_glv(), y0, cfg).states[:, :sys.n],
                    simulate_glv(sys, y0[:sys.n], cfg).states, atol=1e-8)
