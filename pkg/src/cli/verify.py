"""
The invariant suite behind `glvgame verify`.

Every check is a function of a Fixtures bundle and a threshold scale, and
returns (passed, detail). Checks never raise: an exception inside a check is
reported as a failure of that check.
"""
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from src.analysis.embedding import (absorb_lambda, embed, ensure_column_rank, forward_map,
                                    inverse_map, pad_to_square, pushforward_field, recover)
from src.analysis.regret import regret_at, regret_bound, time_avg_regret
from src.analysis.simplex_attractor import (boundary_correct, gronwall_epsilon, lift_to_glv,
                                            lipschitz_estimate, logistic_norm, sample_simplex)
from src.cli import documents
from src.config import colors_enabled
from src.core.errors import GlvGameError
from src.core.fields import CONJUGATE, GAME, TIME_MODES, eval_glv_rhs, eval_lv_rhs, eval_replicator_rhs
from src.core.types import LvSystem, PayoffMatrix, Trajectory
from src.core.validation import validate
from src.data import fixtures
from src.data.lorenz import (DEFAULT_X0, REGRET_T_END, REGRET_TIME_MODE, LorenzParams, lorenz_game,
                             lorenz_symbolic_matrix, reference_lorenz, shifted_lorenz_glv)
from src.dynamics.integrators import RK4_FIXED, IntegratorConfig
from src.dynamics.simulate import simulate_field, simulate_glv, simulate_replicator
from src.utils import read_frame, write_frame

logger = logging.getLogger(__name__)

STRICT_SCALE = 0.1
LORENZ_RADII = (50.0, 76.0, 100.0)
ROUNDTRIP_POINTS = 1000
PUSHFORWARD_POINTS = 100
ATTRACTION_POINTS = 20
GRONWALL_DELTAS = (1e-3, 1e-2)
FACE_POINTS = 50
TANGENCY_POINTS = 50
FACE_DELTA = 0.01
PAYOFF_SHIFT = 3.0
PAYOFF_SCALE = 4.0
RK4_STEPS = (0.1, 0.05)
# Unshifted start for the short-horizon comparisons against the reference orbit.
LORENZ_UNIT_START = (1.0, 1.0, 1.0)

_GREEN = '\033[32m'
_RED = '\033[31m'
_RESET = '\033[0m'


@dataclass
class Fixtures:
    """
    Systems the suite runs on. Replicator runs are computed on first use and
    shared between the checks that read them.
    """
    seed: int = 0
    logistic: object = None
    random_systems: list = None
    lorenz_params: LorenzParams = field(default_factory=LorenzParams)
    lorenz_games: dict = None

    def __post_init__(self):
        if self.logistic is None:
            self.logistic = fixtures.logistic_glv()
        if self.random_systems is None:
            self.random_systems = fixtures.random_glv_family(self.seed)
        if self.lorenz_games is None:
            self.lorenz_games = {
                r: lorenz_game(LorenzParams(self.lorenz_params.sigma, self.lorenz_params.rho,
                                            self.lorenz_params.beta, r))
                for r in LORENZ_RADII
            }

    @cached_property
    def embeddings(self) -> list:
        """(name, GlvSystem, GameEmbedding) for every embedding fixture."""
        lorenz_sys = shifted_lorenz_glv(self.lorenz_params)
        items = [('logistic', self.logistic, embed(self.logistic))]
        items += [(f"random-{i + 1} (n={s.n})", s, embed(s)) for i, s in enumerate(self.random_systems)]
        items.append(('lorenz', lorenz_sys, self.lorenz_embedding))
        return items

    @cached_property
    def lorenz_embedding(self):
        r = self.lorenz_params.r
        if r in self.lorenz_games:
            return self.lorenz_games[r]
        return lorenz_game(self.lorenz_params)

    @cached_property
    def logistic_conjugate_run(self):
        e = embed(self.logistic)
        cfg = IntegratorConfig(t_end=10.0)
        return e, simulate_replicator(e.game, forward_map(e, [0.5]), CONJUGATE, cfg)

    @cached_property
    def replicator_runs(self) -> list:
        """(name, game, trajectory); each trajectory records its clock in meta['time_mode']."""
        runs = []
        e = embed(self.logistic)
        runs.append(('logistic', e.game, simulate_replicator(
            e.game, forward_map(e, [0.5]), GAME, IntegratorConfig(t_end=30.0))))
        rps = fixtures.rock_paper_scissors()
        runs.append(('rock-paper-scissors', rps, simulate_replicator(
            rps, [0.5, 0.3, 0.2], GAME, IntegratorConfig(t_end=20.0))))
        runs.append(('lorenz', self.lorenz_embedding.game, self.lorenz_game_run))
        runs.append(('lorenz (conjugate)', self.lorenz_embedding.game, self.lorenz_regret_run))
        return runs

    @property
    def lorenz_p0(self) -> np.ndarray:
        return forward_map(self.lorenz_embedding, np.asarray(DEFAULT_X0) + self.lorenz_params.r)

    @cached_property
    def lorenz_game_run(self):
        return simulate_replicator(self.lorenz_embedding.game, self.lorenz_p0, GAME,
                                   IntegratorConfig(t_end=100.0))

    @cached_property
    def lorenz_regret_run(self):
        return simulate_replicator(self.lorenz_embedding.game, self.lorenz_p0, REGRET_TIME_MODE,
                                   IntegratorConfig(t_end=REGRET_T_END))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass
class VerifyReport:
    results: list = field(default_factory=list)
    strict: bool = False

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def render(self, color: bool = None) -> str:
        color = colors_enabled() if color is None else color
        lines = []
        for r in self.results:
            tag = 'PASS' if r.passed else 'FAIL'
            if color:
                tag = f"{_GREEN if r.passed else _RED}{tag}{_RESET}"
            lines.append(f"[{tag}] {r.name}: {r.detail} ({r.seconds:.2f}s)")
        failed = sum(not r.passed for r in self.results)
        mode = ' (strict)' if self.strict else ''
        lines.append(f"{len(self.results) - failed}/{len(self.results)} checks passed{mode}")
        return '\n'.join(lines)


def check_lorenz_matrix(fx: Fixtures, scale: float = 1.0):
    tol = 1e-12 * scale
    worst = 0.0
    for r, e in fx.lorenz_games.items():
        params = LorenzParams(fx.lorenz_params.sigma, fx.lorenz_params.rho, fx.lorenz_params.beta, r)
        expected = lorenz_symbolic_matrix(params)
        actual = np.asarray(e.game.A)
        if actual.shape != expected.shape:
            return False, f"r={r:g}: shape {actual.shape}, expected {expected.shape}"
        zeros = expected == 0
        if np.any(actual[zeros] != 0):
            i, j = np.argwhere(zeros & (actual != 0))[0]
            return False, f"r={r:g}: entry ({i + 1},{j + 1}) = {actual[i, j]!r}, expected 0"
        rel = np.abs(actual[~zeros] - expected[~zeros]) / np.abs(expected[~zeros])
        worst = max(worst, float(np.max(rel)))
        if worst > tol:
            return False, f"r={r:g}: relative error {worst:.3e} > {tol:.0e}"
    return True, f"r in {sorted(fx.lorenz_games)}; max relative error {worst:.3e}"


def check_roundtrip(fx: Fixtures, scale: float = 1.0):
    tol = 1e-9 * scale
    worst = 0.0
    for name, sys, e in fx.embeddings:
        for x in fixtures.sample_box(sys.n, ROUNDTRIP_POINTS, fx.seed):
            error = float(np.max(np.abs(inverse_map(e, forward_map(e, x)) - x)))
            worst = max(worst, error)
            if error >= tol:
                return False, f"{name}: |f^-1(f(x)) - x| = {error:.3e} at x={x.tolist()}"
    return True, f"{len(fx.embeddings)} embeddings x {ROUNDTRIP_POINTS} points; max error {worst:.3e}"


def check_pushforward(fx: Fixtures, scale: float = 1.0):
    tol = 1e-5 * scale
    worst = 0.0
    for name, sys, e in fx.embeddings:
        for x in fixtures.sample_box(sys.n, PUSHFORWARD_POINTS, fx.seed + 1):
            pushed = pushforward_field(e, sys, x)
            expected = eval_replicator_rhs(e.game, forward_map(e, x), CONJUGATE)
            size = float(np.max(np.abs(expected)))
            rel = float(np.max(np.abs(pushed - expected))) / size if size > 0 else float(np.max(np.abs(pushed)))
            worst = max(worst, rel)
            if rel > tol:
                return False, f"{name}: relative mismatch {rel:.3e} at x={x.tolist()}"
    return True, f"max relative mismatch {worst:.3e}"


def check_stagewise_rhs(fx: Fixtures, scale: float = 1.0):
    tol = 1e-13 * scale
    worst = 0.0
    for name, sys, _ in fx.embeddings:
        absorbed = absorb_lambda(sys)
        ranked = ensure_column_rank(absorbed)
        for x in fixtures.sample_box(sys.n, 100, fx.seed + 2):
            v = eval_glv_rhs(sys, x)
            size = max(float(np.max(np.abs(v))), np.finfo(float).tiny)
            for stage in (absorbed, ranked):
                rel = float(np.max(np.abs(eval_glv_rhs(stage, x) - v))) / size
                worst = max(worst, rel)
                if rel > tol:
                    return False, f"{name}: stage changed the field by {rel:.3e} relative"
    return True, f"max relative change {worst:.3e}"


def _dummy_start(name, sys, fx: Fixtures) -> np.ndarray:
    if name == 'lorenz':
        return np.asarray(LORENZ_UNIT_START) + fx.lorenz_params.r
    return fixtures.sample_box(sys.n, 1, fx.seed, 0.5, 2.0)[0]


def check_dummy_stationarity(fx: Fixtures, scale: float = 1.0):
    tol = 1e-10 * scale
    cfg = IntegratorConfig(t_end=0.05, sample_dt=0.005)
    checked = []
    for name, sys, _ in fx.embeddings:
        padded = pad_to_square(ensure_column_rank(absorb_lambda(sys)))
        if padded.size == padded.n:
            continue
        if np.any(padded.A_tilde[padded.n:]):
            return False, f"{name}: padded coefficient rows are not zero"
        y0 = np.ones(padded.size)
        y0[:padded.n] = _dummy_start(name, sys, fx)
        try:
            traj = simulate_glv(padded.to_glv(), y0, cfg)
        except GlvGameError as e:
            return False, f"{name}: padded system could not be simulated ({type(e).__name__}: {e})"
        drift = float(np.max(np.abs(traj.states[:, padded.n:] - 1.0)))
        if drift > tol:
            return False, f"{name}: dummy coordinates drifted by {drift:.3e}"
        checked.append(name)
    if not checked:
        return False, "no fixture has dummy coordinates"
    return True, f"dummy coordinates stay at 1 for {', '.join(checked)}"


def check_logistic_conjugacy(fx: Fixtures, scale: float = 1.0):
    tol = 1e-6 * scale
    e, traj = fx.logistic_conjugate_run
    x = recover(e, traj).states[:, 0]
    error = float(np.max(np.abs(x - fixtures.logistic_solution(0.5, traj.times))))
    return error < tol, f"sup error {error:.3e} over t in [0, {traj.times[-1]:g}]"


def check_glv_conjugacy(fx: Fixtures, scale: float = 1.0):
    tol = 1e-6 * scale
    sys = fixtures.competitive_glv()
    e = embed(sys)
    cfg = IntegratorConfig(t_end=10.0)
    x0 = [0.3, 1.5]
    source = simulate_glv(sys, x0, cfg)
    embedded = simulate_replicator(e.game, forward_map(e, x0), CONJUGATE, cfg)
    error = float(np.max(np.abs(recover(e, embedded).states - source.states)))
    return error < tol, f"competitive LV: sup error {error:.3e}"


def check_lorenz_conjugacy(fx: Fixtures, scale: float = 1.0):
    tol = 1e-3 * scale
    params = fx.lorenz_params
    e = fx.lorenz_embedding
    cfg = IntegratorConfig(t_end=2.0).with_tolerance(1e-12)
    oracle = reference_lorenz(params, LORENZ_UNIT_START, cfg)
    embedded = simulate_replicator(e.game, forward_map(e, oracle.states[0]), CONJUGATE, cfg)
    error = float(np.max(np.abs(recover(e, embedded).states - oracle.states)))
    return error < tol, f"sup error {error:.3e} over t in [0, 2]"


def check_time_modes(fx: Fixtures, scale: float = 1.0):
    tol = 1e-4 * scale
    e = embed(fx.logistic)
    p0 = forward_map(e, [0.5])
    game_run = simulate_replicator(e.game, p0, GAME, IntegratorConfig(t_end=30.0))
    conj_run = simulate_replicator(e.game, p0, CONJUGATE, IntegratorConfig(t_end=15.0))
    distance = orbit_distance(game_run.states, conj_run.states)
    return distance < tol, f"largest distance between orbits {distance:.3e}"


def orbit_distance(points, polyline) -> float:
    """Largest distance (inf-norm) from a point to the piecewise-linear orbit through polyline."""
    a = polyline[:-1]
    d = polyline[1:] - polyline[:-1]
    lengths = np.einsum('ij,ij->i', d, d)
    lengths[lengths == 0] = 1.0
    worst = 0.0
    for q in points:
        s = np.clip(np.einsum('ij,ij->i', q - a, d) / lengths, 0.0, 1.0)
        nearest = a + s[:, None] * d
        worst = max(worst, float(np.min(np.max(np.abs(nearest - q), axis=1))))
    return worst


def check_simplex_invariance(fx: Fixtures, scale: float = 1.0):
    tol = 1e-9 * scale
    runs = list(fx.replicator_runs) + [('logistic (conjugate)', None, fx.logistic_conjugate_run[1])]
    for name, _, traj in runs:
        drift = float(np.max(np.abs(traj.states.sum(axis=1) - 1.0)))
        if drift >= tol or np.min(traj.states) <= 0:
            return False, f"{name}: sum drift {drift:.3e}, min weight {np.min(traj.states):.3e}"
    return True, f"{len(runs)} runs stay on the simplex"


def check_regret_bound(fx: Fixtures, scale: float = 1.0):
    slack = 1e-6 * scale
    for name, game, traj in fx.replicator_runs:
        series = time_avg_regret(game, traj)
        cumulative = float(np.max(series.cumulative_regret))
        bound = regret_bound(traj.states[0])
        if cumulative > bound + slack:
            return False, f"{name}: T*R(T) = {cumulative:.6g} exceeds ln(1/p_min(0)) = {bound:.6g}"
    return True, f"{len(fx.replicator_runs)} replicator runs within the bound"


def check_lorenz_regret(fx: Fixtures, scale: float = 1.0):
    ceiling = 0.05 * scale
    traj = fx.lorenz_regret_run
    series = time_avg_regret(fx.lorenz_embedding.game, traj)
    early, late = regret_at(series, 10.0), regret_at(series, REGRET_T_END)
    ok = late < early / 5 and late < ceiling
    return ok, (f"R(10) = {early:.4g}, R({REGRET_T_END:g}) = {late:.4g} ({REGRET_TIME_MODE} time; "
                f"game time {series.game_times[-1]:.4g})")


def check_lorenz_boundedness(fx: Fixtures, scale: float = 1.0):
    floor = 1e-30
    traj = fx.lorenz_game_run
    smallest = float(np.min(traj.states[traj.times <= 100.0]))
    return smallest > floor, f"min weight {smallest:.3e} over t in [0, 100]"


def check_lorenz_reference(fx: Fixtures, scale: float = 1.0):
    tol = 1e-6 * scale
    params = fx.lorenz_params
    cfg = IntegratorConfig(t_end=5.0).with_tolerance(1e-12)
    oracle = reference_lorenz(params, LORENZ_UNIT_START, cfg)
    glv = simulate_glv(shifted_lorenz_glv(params), oracle.states[0], cfg)
    error = float(np.max(np.abs(glv.states - oracle.states)))
    return error < tol, f"GLV form vs reference orbit: sup error {error:.3e} over t in [0, 5]"


def check_regret_shift(fx: Fixtures, scale: float = 1.0):
    worst = 0.0
    for name, game, traj in fx.replicator_runs:
        tol = 1e-10 * scale * max(1.0, float(np.max(np.abs(game.A))))
        base = time_avg_regret(game, traj).avg_regret
        shifted = time_avg_regret(PayoffMatrix(A=game.A + PAYOFF_SHIFT), traj).avg_regret
        change = float(np.max(np.abs(shifted - base)))
        worst = max(worst, change)
        if change > tol:
            return False, f"{name}: adding {PAYOFF_SHIFT:g} to every payoff moved the regret by {change:.3e}"
    return True, f"{len(fx.replicator_runs)} runs; max change {worst:.3e}"


def check_best_action_scaling(fx: Fixtures, scale: float = 1.0):
    for name, game, traj in fx.replicator_runs:
        base = time_avg_regret(game, traj).best_action
        scaled = time_avg_regret(PayoffMatrix(A=PAYOFF_SCALE * game.A), traj).best_action
        if not np.array_equal(base, scaled):
            k = int(np.flatnonzero(base != scaled)[0])
            return False, f"{name}: best action {base[k]} became {scaled[k]} after scaling by {PAYOFF_SCALE:g}"
    return True, f"{len(fx.replicator_runs)} runs keep their best actions"


def check_step_halving(fx: Fixtures, scale: float = 1.0):
    errors = []
    for dt in RK4_STEPS:
        cfg = IntegratorConfig(method=RK4_FIXED, t_end=10.0, dt_init=dt, sample_dt=0.1)
        traj = simulate_glv(fx.logistic, [0.5], cfg)
        errors.append(float(np.max(np.abs(traj.states[:, 0] - fixtures.logistic_solution(0.5, traj.times)))))
    coarse, fine = errors
    return fine <= coarse / 2, f"logistic error {coarse:.3e} at dt={RK4_STEPS[0]:g}, {fine:.3e} at dt={RK4_STEPS[1]:g}"


def check_serialization(fx: Fixtures, scale: float = 1.0):
    objects = [(name, sys) for name, sys, _ in fx.embeddings]
    objects += [(f"{name} game", e.game) for name, _, e in fx.embeddings]
    objects += [(f"{name} embedding", e) for name, _, e in fx.embeddings]
    objects.append(('polynomial field', fixtures.polynomial_fixture()))
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'document.json')
        for name, obj in objects:
            documents.save(obj, path)
            if documents.load(path) != obj:
                return False, f"{name}: document does not parse back to the same object"
    return True, f"{len(objects)} documents parse back bit-exactly"


def check_csv_determinism(fx: Fixtures, scale: float = 1.0):
    rps = simulate_replicator(fixtures.rock_paper_scissors(), [0.6, 0.3, 0.1], GAME, IntegratorConfig(t_end=2.0))
    runs = [('logistic (conjugate)', fx.logistic_conjugate_run[1]), ('rock-paper-scissors', rps)]
    with tempfile.TemporaryDirectory() as tmp:
        first, second = os.path.join(tmp, 'a.csv'), os.path.join(tmp, 'b.csv')
        for name, traj in runs:
            write_frame(traj.to_frame(), first)
            write_frame(traj.to_frame(), second)
            with open(first, 'rb') as a, open(second, 'rb') as b:
                if a.read() != b.read():
                    return False, f"{name}: two writes of the same trajectory differ"
            parsed = Trajectory.from_frame(read_frame(first))
            if not (np.array_equal(parsed.times, traj.times) and np.array_equal(parsed.states, traj.states)):
                return False, f"{name}: CSV does not parse back bit-exactly"
    return True, f"{len(runs)} trajectories written identically and parsed back exactly"


def check_face_positivity(fx: Fixtures, scale: float = 1.0):
    tol = 1e-12 * scale
    h = fixtures.polynomial_fixture()
    p = boundary_correct(h, FACE_DELTA)
    n = h.n
    lift = FACE_DELTA / n
    worst = 0.0
    for i in range(n):
        for rest in sample_simplex(n - 1, FACE_POINTS, fx.seed + i):
            y = np.insert(rest, i, 0.0)
            value = p.evaluate(y)[i]
            gap = abs(value - h.evaluate(y)[i] - lift)
            worst = max(worst, gap)
            if not value > 0 or gap > tol:
                return False, f"face y_{i + 1} = 0: corrected p_{i + 1} = {value:.3e} at y={y.tolist()}"
    return True, f"{n} faces x {FACE_POINTS} points; lift delta/n = {lift:g} within {worst:.1e}"


def check_field_invariants(fx: Fixtures, scale: float = 1.0):
    tol = 1e-12 * scale
    games = [(name, e.game) for name, _, e in fx.embeddings]
    games.append(('rock-paper-scissors', fixtures.rock_paper_scissors()))
    worst = 0.0
    for name, game in games:
        if name != 'rock-paper-scissors' and (np.any(game.A[-1]) or np.any(game.A[:, -1])):
            return False, f"{name}: last row or column of the game is not zero"
        size = max(1.0, float(np.max(np.abs(game.A))))
        for p in sample_simplex(game.m, TANGENCY_POINTS, fx.seed):
            for mode in TIME_MODES:
                v = eval_replicator_rhs(game, p, mode)
                clock = p[-1] if mode == CONJUGATE else 1.0
                residual = abs(float(v.sum())) * clock / size
                worst = max(worst, residual)
                if residual > tol:
                    return False, f"{name}: replicator field ({mode} time) leaves the simplex by {residual:.3e}"
    for d in (1, 3, 11):
        for z in fixtures.sample_box(d, 10, fx.seed):
            if np.any(eval_lv_rhs(LvSystem(A_hat=np.zeros((d, d))), z)):
                return False, f"zero LV system moves at z={z.tolist()}"
    return True, f"{len(games)} games tangent in both time modes (max residual {worst:.1e}); zero LV field is still"


def check_logistic_attraction(fx: Fixtures, scale: float = 1.0):
    tol = 1e-6 * scale
    on_simplex_tol = 1e-8 * scale
    glv = lift_to_glv(boundary_correct(fixtures.polynomial_fixture(), 0.01))
    cfg = IntegratorConfig(t_end=20.0)
    rng = np.random.default_rng(fx.seed)
    worst = 0.0
    for _ in range(ATTRACTION_POINTS):
        s0 = rng.uniform(0.1, 1.9)
        y0 = s0 * rng.dirichlet(5.0 * np.ones(glv.n))
        traj = simulate_glv(glv, y0, cfg)
        error = float(np.max(np.abs(traj.states.sum(axis=1) - logistic_norm(y0.sum(), traj.times))))
        worst = max(worst, error)
        if error >= tol:
            return False, f"|y|_1 departs from the logistic curve by {error:.3e} from s0={s0:.3f}"
    y0 = rng.dirichlet(5.0 * np.ones(glv.n))
    traj = simulate_glv(glv, y0 / y0.sum(), cfg)
    drift = float(np.max(np.abs(traj.states.sum(axis=1) - 1.0)))
    if drift >= on_simplex_tol:
        return False, f"orbit started on the simplex drifted by {drift:.3e}"
    return True, f"max logistic error {worst:.3e}; simplex drift {drift:.3e}"


def check_gronwall(fx: Fixtures, scale: float = 1.0):
    h = fixtures.polynomial_fixture()
    L = 1.5 * lipschitz_estimate(h, 1000, seed=fx.seed)
    cfg = IntegratorConfig(t_end=1.0)
    y0 = [0.5, 0.3, 0.2]
    base = simulate_field(h, y0, cfg)
    details = []
    for delta in GRONWALL_DELTAS:
        perturbed = simulate_field(boundary_correct(h, delta), y0, cfg)
        divergence = float(np.max(np.abs(perturbed.states - base.states)))
        bound = gronwall_epsilon(delta, L, 1.0)
        if divergence > bound:
            return False, f"delta={delta:g}: divergence {divergence:.3e} > bound {bound:.3e}"
        details.append(f"delta={delta:g}: {divergence:.2e} <= {bound:.2e}")
    return True, '; '.join(details)


def check_validation(fx: Fixtures, scale: float = 1.0):
    reports = [validate(shifted_lorenz_glv(fx.lorenz_params)),
               validate(fixtures.polynomial_fixture()),
               validate(fx.lorenz_embedding.game)]
    failed = [r.subject for r in reports if not r.passed]
    return not failed, f"failed: {failed}" if failed else "fixtures are well formed"


CHECKS = [
    ('lorenz matrix reproduction', check_lorenz_matrix),
    ('diffeomorphism roundtrip', check_roundtrip),
    ('pushforward field', check_pushforward),
    ('stage-wise field preservation', check_stagewise_rhs),
    ('dummy stationarity', check_dummy_stationarity),
    ('logistic conjugacy', check_logistic_conjugacy),
    ('competitive LV conjugacy', check_glv_conjugacy),
    ('lorenz conjugacy', check_lorenz_conjugacy),
    ('time-mode orbit equality', check_time_modes),
    ('simplex invariance', check_simplex_invariance),
    ('regret bound', check_regret_bound),
    ('lorenz regret decay', check_lorenz_regret),
    ('lorenz boundedness', check_lorenz_boundedness),
    ('logistic attraction', check_logistic_attraction),
    ('gronwall bound', check_gronwall),
    ('fixture validation', check_validation),
    ('serialization roundtrip', check_serialization),
    ('csv determinism', check_csv_determinism),
    ('regret payoff-shift invariance', check_regret_shift),
    ('best-action scaling invariance', check_best_action_scaling),
    ('step halving', check_step_halving),
    ('boundary face positivity', check_face_positivity),
    ('field invariants', check_field_invariants),
    ('lorenz reference orbit', check_lorenz_reference),
]


def run_check(name, check, fx: Fixtures, scale: float) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = check(fx, scale)
    except Exception as e:  # a crashing check is a failed check
        logger.debug("Check %r raised", name, exc_info=True)
        passed, detail = False, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - start
    logger.info("%s: %s", name, 'pass' if passed else 'FAIL')
    return CheckResult(name=name, passed=bool(passed), detail=detail, seconds=elapsed)


def run_verify(strict: bool = False, seed: int = 0, fx: Fixtures = None, only=None) -> VerifyReport:
    """
    Runs the invariant suite.

    Args:
        strict: Tighten every numeric threshold tenfold.
        seed: Seed for the random fixtures and sample points.
        fx: Prebuilt fixtures; built from seed when omitted.
        only: Optional collection of check names to run.

    Returns:
        A VerifyReport; its exit_code is 0 iff every check passed.
    """
    fx = fx if fx is not None else Fixtures(seed=seed)
    scale = STRICT_SCALE if strict else 1.0
    report = VerifyReport(strict=strict)
    for name, check in CHECKS:
        if only and name not in only:
            continue
        report.results.append(run_check(name, check, fx, scale))
    return report
