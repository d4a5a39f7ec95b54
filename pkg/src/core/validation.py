"""Invariant checks for the core domain types. Failures are reported, never raised."""
import logging
from dataclasses import dataclass, field

import numpy as np

from src.core.errors import GlvGameError
from src.core.types import GlvSystem, PayoffMatrix, PolynomialField

logger = logging.getLogger(__name__)

TANGENCY_TOL = 1e-12


@dataclass
class ValidationReport:
    subject: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, invariant: str, ok: bool, message: str = ''):
        self.checks.append((invariant, bool(ok), message))

    def failures(self) -> list:
        return [(name, message) for name, ok, message in self.checks if not ok]

    def __str__(self):
        lines = [f"{self.subject}: {'pass' if self.passed else 'FAIL'}"]
        for name, ok, message in self.checks:
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}" + (f" - {message}" if message else ''))
        return '\n'.join(lines)


def _validate_glv(sys: GlvSystem, report: ValidationReport):
    n = sys.n
    report.add('dimension', n >= 1, f"n = {n}")
    finite = all(np.all(np.isfinite(a)) for a in (sys.lam, sys.A, sys.B))
    report.add('finite entries', finite, '' if finite else 'lam, A or B contains non-finite values')
    if not report.passed:
        return
    # per-capita rates at a few interior points
    rng = np.random.default_rng(0)
    points = np.vstack([np.ones(n), rng.uniform(0.1, 10.0, size=(4, n))])
    try:
        ok = all(np.all(np.isfinite(sys.fitness(x))) for x in points)
        message = '' if ok else 'fitness not finite at a sample point'
    except GlvGameError as e:
        ok, message = False, str(e)
    report.add('finite fitness', ok, message)


def _malformed_exponents(field: PolynomialField) -> list:
    return [e for poly in field.coords for _, e in poly if len(e) != field.n or any(k < 0 for k in e)]


def _validate_field(field: PolynomialField, report: ValidationReport):
    report.add('dimension', field.n >= 1, f"n = {field.n}")
    finite = all(np.isfinite(c) for poly in field.coords for c, _ in poly)
    report.add('finite coefficients', finite)
    malformed = _malformed_exponents(field)
    report.add('exponents', not malformed,
               '' if not malformed else f"expected non-negative exponent vectors of length {field.n}, "
                                        f"got {malformed[0]}")
    if malformed:
        return
    residual = field.coordinate_sum()
    worst = max((abs(c) for c, _ in residual), default=0.0)
    report.add('tangency', worst <= TANGENCY_TOL,
               '' if worst <= TANGENCY_TOL else f"sum of coordinates has coefficient {worst:.3e}")


def _validate_game(game: PayoffMatrix, report: ValidationReport):
    rows, cols = game.A.shape
    report.add('square', rows == cols and rows >= 1, f"A has shape {game.A.shape}")
    finite = bool(np.all(np.isfinite(game.A)))
    report.add('finite entries', finite, '' if finite else 'payoff matrix contains non-finite values')


def validate(obj) -> ValidationReport:
    """
    Checks the type invariants of a GlvSystem, PolynomialField or PayoffMatrix.

    Args:
        obj: The object to check.

    Returns:
        A ValidationReport listing every invariant with a pass/fail flag.
    """
    report = ValidationReport(subject=type(obj).__name__)
    if isinstance(obj, GlvSystem):
        _validate_glv(obj, report)
    elif isinstance(obj, PolynomialField):
        _validate_field(obj, report)
    elif isinstance(obj, PayoffMatrix):
        _validate_game(obj, report)
    else:
        report.add('supported type', False, f"cannot validate {type(obj).__name__}")
    if not report.passed:
        logger.debug("Validation failed:\n%s", report)
    return report
