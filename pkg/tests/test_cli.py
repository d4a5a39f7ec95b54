import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.analysis.embedding import forward_map
from src.cli import documents
from src.cli.app import main, parse_args
from src.core.errors import UsageError
from src.core.types import GlvSystem, PayoffMatrix, PolynomialField
from src.data.fixtures import logistic_solution, polynomial_fixture, rock_paper_scissors
from src.utils import read_frame


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('NO_COLOR', '1')
    return tmp_path


def test_parse_embed():
    args = parse_args(['embed', '--input', 'glv.json', '--output', 'game.json'])
    assert args.command == 'embed'
    assert args.input == 'glv.json'


def test_parse_simulate():
    args = parse_args(['simulate', '--game', 'g.json', '--p0', '0.2,0.3,0.5', '--t-end', '10', '--out', 't.csv'])
    assert args.command == 'simulate'
    assert args.t_end == 10.0
    assert args.time_mode == 'game'


def test_missing_required_flag():
    with pytest.raises(UsageError):
        parse_args(['embed', '--input', 'glv.json'])


def test_unknown_flag():
    with pytest.raises(UsageError):
        parse_args(['embed', '--input', 'a', '--output', 'b', '--colour'])


def test_usage_exit_code(workdir):
    assert main(['simulate', '--game', 'g.json']) == 64
    assert main([]) == 64


def test_seed_from_environment(monkeypatch, workdir):
    monkeypatch.setenv('GLVGAME_SEED', '7')
    assert parse_args(['verify']).seed == 7
    assert parse_args(['--seed', '3', 'verify']).seed == 3


def test_embed_simulate_recover_pipeline(workdir, logistic):
    documents.save(logistic, 'glv.json')
    assert main(['embed', '--input', 'glv.json', '--output', 'game.json']) == 0
    e = documents.load('game.json', documents.EMBEDDING)
    assert e.m == 3

    assert main(['simulate', '--game', 'game.json', '--x0', '0.5', '--t-end', '10',
                 '--time-mode', 'conjugate', '--out', 'traj.csv']) == 0
    assert main(['recover', '--embedding', 'game.json', '--traj', 'traj.csv', '--out', 'recovered.csv']) == 0
    recovered = read_frame('recovered.csv')
    assert list(recovered.columns) == ['t', 's1']
    assert_allclose(recovered['s1'], logistic_solution(0.5, recovered['t']), atol=1e-6)


def test_simulate_glv(workdir, logistic):
    documents.save(logistic, 'glv.json')
    assert main(['simulate', '--glv', 'glv.json', '--x0', '0.25', '--t-end', '1', '--out', 'traj.csv']) == 0
    df = read_frame('traj.csv')
    assert df['s1'].iloc[-1] == pytest.approx(logistic_solution(0.25, 1.0), abs=1e-8)


def test_simulate_glv_rejects_p0(workdir, logistic):
    documents.save(logistic, 'glv.json')
    assert main(['simulate', '--glv', 'glv.json', '--p0', '0.5,0.5', '--out', 'traj.csv']) == 64
    assert not (workdir / 'traj.csv').exists()


def test_simulate_bare_game_needs_p0(workdir):
    documents.save(rock_paper_scissors(), 'rps.json')
    assert main(['simulate', '--game', 'rps.json', '--x0', '1', '--out', 'traj.csv']) == 64


def test_csv_output_is_deterministic(workdir):
    documents.save(rock_paper_scissors(), 'rps.json')
    for name in ('a.csv', 'b.csv'):
        assert main(['simulate', '--game', 'rps.json', '--p0', '0.6,0.3,0.1', '--t-end', '2', '--out', name]) == 0
    assert (workdir / 'a.csv').read_bytes() == (workdir / 'b.csv').read_bytes()
    assert (workdir / 'a.csv').read_text().splitlines()[0] == 't,s1,s2,s3'


def test_regret_command(workdir):
    documents.save(rock_paper_scissors(), 'rps.json')
    main(['simulate', '--game', 'rps.json', '--p0', '0.6,0.3,0.1', '--t-end', '5', '--out', 'traj.csv'])
    assert main(['regret', '--game', 'rps.json', '--traj', 'traj.csv', '--out', 'regret.csv']) == 0
    df = read_frame('regret.csv')
    assert list(df.columns) == ['t', 'avg_regret', 'best_action']
    assert df['best_action'].between(1, 3).all()


def test_singular_embedding_exits_with_numerical_code(workdir):
    # full rank, but with condition number far beyond 1e12
    sys = GlvSystem(lam=[0.0, 0.0], A=[[1.0, 1.0], [1.0, 1.0]], B=[[1.0, 1.0], [1.0, 1.0 + 1e-13]])
    documents.save(sys, 'glv.json')
    assert main(['embed', '--input', 'glv.json', '--output', 'game.json']) == 2


def test_boundary_sample_in_recover(workdir, logistic_embedding):
    documents.save(logistic_embedding, 'game.json')
    (workdir / 'traj.csv').write_text('t,s1,s2,s3\n0,0.2,0.3,0.5\n1,0.5,0.5,0\n')
    assert main(['recover', '--embedding', 'game.json', '--traj', 'traj.csv', '--out', 'out.csv']) == 2


def test_embed_polynomial_field(workdir):
    documents.save(polynomial_fixture(), 'field.json')
    assert main(['embed', '--input', 'field.json', '--output', 'game.json']) == 64
    assert main(['embed', '--input', 'field.json', '--output', 'game.json', '--delta', '0.01']) == 0
    assert documents.load('game.json').n == 3


@pytest.mark.parametrize('delta', ['0', '-1'])
def test_embed_rejects_non_positive_delta(workdir, delta):
    documents.save(polynomial_fixture(), 'field.json')
    assert main(['embed', '--input', 'field.json', '--output', 'game.json', '--delta', delta]) == 64


def test_embed_non_tangent_field_exits_with_numerical_code(workdir, capsys):
    documents.save(PolynomialField(n=2, coords=(((1.0, (0, 0)),), ())), 'field.json')
    assert main(['embed', '--input', 'field.json', '--output', 'game.json', '--delta', '0.1']) == 2
    assert 'Traceback' not in capsys.readouterr().err


def test_regret_command_on_a_conjugate_trajectory(workdir, logistic_embedding):
    documents.save(logistic_embedding, 'game.json')
    for mode in ('game', 'conjugate'):
        assert main(['simulate', '--game', 'game.json', '--x0', '0.5', '--t-end', '5', '--time-mode', mode,
                     '--out', f"{mode}.csv"]) == 0
        assert main(['regret', '--game', 'game.json', '--traj', f"{mode}.csv", '--time-mode', mode,
                     '--out', f"{mode}_regret.csv"]) == 0
        df = read_frame(f"{mode}_regret.csv")
        assert np.isfinite(df['avg_regret']).all()
        assert df['avg_regret'].min() > -1e-8


def test_lorenz_command(workdir):
    assert main(['lorenz', '--t-end', '1', '--out-prefix', 'run/']) == 0
    for name in ('game.json', 'traj.csv', 'recovered.csv', 'regret.csv'):
        assert (workdir / 'run' / name).exists()
    game = documents.load('run/game.json')
    assert game.m == 11
    recovered = read_frame('run/recovered.csv')
    assert_allclose(recovered.iloc[0, 1:].to_numpy(), [77.0, 77.0, 276.0], rtol=1e-12)
    assert parse_args(['lorenz']).time_mode == 'conjugate'


def test_lorenz_radius_override(workdir):
    assert main(['lorenz', '--r', '100', '--t-end', '0.5', '--out-prefix', 'r100_']) == 0
    game = documents.load('r100_game.json')
    # A[0, 1] holds eta = rho + r
    assert game.game.A[0, 1] == 128.0


def test_verify_single_check(workdir, capsys):
    assert main(['verify', '--only', 'lorenz matrix reproduction']) == 0
    out = capsys.readouterr().out
    assert '[PASS] lorenz matrix reproduction' in out
    assert '\033[' not in out


def test_verify_rejects_unknown_check(workdir):
    assert main(['verify', '--only', 'no such check']) == 64
