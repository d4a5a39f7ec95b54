import numpy as np
import pytest

from src.core.types import GlvSystem, PayoffMatrix, PolynomialField
from src.core.validation import validate
from src.data.fixtures import polynomial_fixture


def test_lorenz_system_passes(lorenz_glv):
    report = validate(lorenz_glv)
    assert report.passed, str(report)


def test_polynomial_fixture_is_tangent():
    assert validate(polynomial_fixture()).passed


def test_non_tangent_field_fails_tangency():
    field = PolynomialField(n=2, coords=(((1.0, (1, 0)),), ()))
    report = validate(field)
    assert not report.passed
    assert [name for name, _ in report.failures()] == ['tangency']


def test_non_finite_payoff_fails():
    report = validate(PayoffMatrix(A=[[0.0, np.inf], [1.0, 0.0]]))
    assert not report.passed
    assert 'finite entries' in str(report)


def test_non_finite_glv_fails_without_raising():
    sys = GlvSystem(lam=[0.0, np.nan], A=np.zeros((2, 2)), B=np.eye(2))
    report = validate(sys)
    assert not report.passed
    assert [name for name, _ in report.failures()] == ['finite entries']


@pytest.mark.parametrize('exponents', [(-1, 0), (1,), (1, 0, 2)])
def test_malformed_exponents_are_reported_not_raised(exponents):
    field = PolynomialField(n=2, coords=(((1.0, exponents),), ((-1.0, exponents),)))
    report = validate(field)
    assert not report.passed
    assert [name for name, _ in report.failures()] == ['exponents']
    assert 'tangency' not in [name for name, _, _ in report.checks]


def test_unsupported_type_is_reported():
    report = validate('not a system')
    assert not report.passed
