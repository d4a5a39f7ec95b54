import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.errors import DomainError, RangeError, ShapeError
from src.core.fields import (CONJUGATE, GAME, eval_glv_rhs, eval_lv_rhs, eval_monomials,
                             eval_replicator_rhs, expected_payoff_two_player,
                             replicator_field_polynomial)
from src.core.types import GlvSystem, LvSystem, PayoffMatrix
from src.data.fixtures import rock_paper_scissors
from src.data.lorenz import lorenz_rhs

LOGISTIC_GAME = [[-1.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]


def test_zero_glv_field():
    sys = GlvSystem(lam=[0.0, 0.0], A=np.zeros((2, 3)), B=np.ones((3, 2)))
    assert_allclose(eval_glv_rhs(sys, [0.5, 0.5]), [0.0, 0.0])


def test_logistic_glv_field(logistic):
    assert_allclose(eval_glv_rhs(logistic, [0.25]), [0.1875])


def test_glv_field_rejects_non_positive_state(logistic):
    with pytest.raises(DomainError) as info:
        eval_glv_rhs(logistic, [0.0])
    assert info.value.index == 0


def test_glv_field_rejects_wrong_length(logistic):
    with pytest.raises(ShapeError):
        eval_glv_rhs(logistic, [0.5, 0.5])


def test_monomial_overflow_names_the_monomial():
    with pytest.raises(RangeError) as info:
        eval_monomials([[1.0], [800.0]], [10.0])
    assert info.value.index == 1


def test_lorenz_glv_vanishes_at_shifted_origin(lorenz_glv, lorenz_params):
    assert_allclose(eval_glv_rhs(lorenz_glv, lorenz_params.shift), np.zeros(3), atol=1e-9)


def test_lorenz_glv_matches_standard_lorenz(lorenz_glv, lorenz_params, rng):
    r = lorenz_params.r
    assert_allclose(eval_glv_rhs(lorenz_glv, [r + 1, r + 1, r + 1]), [0.0, 26.0, 1.0 - 8.0 / 3.0],
                    rtol=1e-10, atol=1e-9)
    for x in rng.uniform(-20.0, 20.0, (10, 3)):
        expected = lorenz_rhs(x, lorenz_params)
        assert_allclose(eval_glv_rhs(lorenz_glv, x + r), expected, rtol=1e-10, atol=1e-8)


@pytest.mark.parametrize('z, expected', [
    ([1.0, 1.0], [0.0, 0.0]),
    ([2.0, 1.0], [-2.0, 0.0]),
])
def test_lv_field(z, expected):
    lv = LvSystem(A_hat=[[-1.0, 1.0], [0.0, 0.0]])
    assert_allclose(eval_lv_rhs(lv, z), expected)


def test_zero_lv_field():
    assert_allclose(eval_lv_rhs(LvSystem(A_hat=np.zeros((2, 2))), [1.0, 1.0]), [0.0, 0.0])


def test_replicator_zero_game():
    p = np.ones(3) / 3
    assert_allclose(eval_replicator_rhs(PayoffMatrix(A=np.zeros((3, 3))), p), np.zeros(3))


def test_replicator_logistic_game_at_barycenter():
    p = np.ones(3) / 3
    assert_allclose(eval_replicator_rhs(PayoffMatrix(A=LOGISTIC_GAME), p, GAME), np.zeros(3), atol=1e-15)


@pytest.mark.parametrize('time_mode', [GAME, CONJUGATE])
def test_replicator_field_is_tangent(time_mode, rng):
    game = PayoffMatrix(A=rng.normal(size=(5, 5)))
    for _ in range(20):
        p = rng.dirichlet(np.ones(5))
        assert abs(eval_replicator_rhs(game, p, time_mode).sum()) < 1e-12


def test_conjugate_mode_divides_by_last_weight(rng):
    game = PayoffMatrix(A=rng.normal(size=(4, 4)))
    p = rng.dirichlet(np.ones(4))
    assert_allclose(eval_replicator_rhs(game, p, CONJUGATE), eval_replicator_rhs(game, p, GAME) / p[-1])


def test_replicator_rejects_points_off_the_simplex():
    game = rock_paper_scissors()
    with pytest.raises(DomainError):
        eval_replicator_rhs(game, [0.5, 0.5, 0.5])
    with pytest.raises(DomainError):
        eval_replicator_rhs(game, [0.0, 0.5, 0.5])


def test_replicator_rejects_unknown_time_mode():
    with pytest.raises(ValueError):
        eval_replicator_rhs(rock_paper_scissors(), np.ones(3) / 3, 'wall-clock')


@pytest.mark.parametrize('A12, x1, x2, expected', [
    (np.eye(2), [1.0, 0.0], [1.0, 0.0], 1.0),
    (np.zeros((2, 2)), [0.3, 0.7], [0.9, 0.1], 0.0),
    ([[0.0, 1.0], [-1.0, 0.0]], [0.5, 0.5], [0.5, 0.5], 0.0),
])
def test_expected_payoff_two_player(A12, x1, x2, expected):
    assert expected_payoff_two_player(A12, x1, x2) == pytest.approx(expected)


def test_expected_payoff_shape_mismatch():
    with pytest.raises(ShapeError):
        expected_payoff_two_player(np.eye(2), [1.0, 0.0, 0.0], [1.0, 0.0])


def test_replicator_polynomial_matches_field_on_simplex(rng):
    game = PayoffMatrix(A=rng.normal(size=(3, 3)))
    field = replicator_field_polynomial(game)
    assert field.degree() == 3
    for p in rng.dirichlet(np.ones(3), size=10):
        assert_allclose(field.evaluate(p), eval_replicator_rhs(game, p), atol=1e-13)
