"""
Subcommand registration and handlers.

register_commands adds one subparser per command and binds its handler with
set_defaults(handler=...). Handlers take the parsed namespace and return a
process exit code.
"""
import logging
import os

import numpy as np

from src.analysis.embedding import embed, forward_map, recover
from src.analysis.regret import regret_at, regret_bound, time_avg_regret
from src.analysis.simplex_attractor import embed_simplex_field
from src.cli import documents
from src.cli.verify import CHECKS, run_verify
from src.core.errors import UsageError
from src.core.fields import GAME, TIME_MODES
from src.core.types import GameEmbedding, PayoffMatrix, PolynomialField, Trajectory
from src.data.lorenz import (DEFAULT_X0, REGRET_T_END, REGRET_TIME_MODE, LorenzParams, lorenz_game,
                             min_shifted_coordinate)
from src.dynamics.integrators import METHODS, IntegratorConfig
from src.dynamics.simulate import simulate_glv, simulate_replicator
from src.utils import parse_vector, read_frame, write_frame

logger = logging.getLogger(__name__)


def _vector(text):
    try:
        return parse_vector(text)
    except ValueError as e:
        raise UsageError(f"cannot parse vector {text!r}: {e}") from e


def _integrator_config(args) -> IntegratorConfig:
    overrides = {
        'method': getattr(args, 'method', None),
        'sample_dt': getattr(args, 'sample_dt', None),
        't_end': args.t_end,
    }
    if getattr(args, 'tol', None) is not None:
        overrides['rel_tol'] = overrides['abs_tol'] = args.tol
    try:
        return IntegratorConfig.from_settings(**overrides)
    except (TypeError, ValueError) as e:
        raise UsageError(str(e)) from e


def _payoff_matrix(obj) -> PayoffMatrix:
    return obj.game if isinstance(obj, GameEmbedding) else obj


def _read_trajectory(path) -> Trajectory:
    try:
        return Trajectory.from_frame(read_frame(path))
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def run_embed(args) -> int:
    source = documents.load(args.input, documents.GLV, documents.FIELD)
    if isinstance(source, PolynomialField):
        if args.delta is None:
            raise UsageError("embedding a polynomial field needs --delta")
        if not args.delta > 0:
            raise UsageError(f"--delta must be positive, got {args.delta!r}")
        e = embed_simplex_field(source, args.delta).embedding
    else:
        e = embed(source)
    documents.save(e, args.output)
    print(f"Wrote {e.m}x{e.m} game embedding of an n={e.n} system to {args.output}")
    return 0


def run_simulate(args) -> int:
    cfg = _integrator_config(args)
    if args.glv:
        sys = documents.load(args.glv, documents.GLV)
        if args.p0 is not None:
            raise UsageError("--p0 is a simplex point; pass the GLV initial state with --x0")
        if args.x0 is None:
            raise UsageError("--glv needs an initial state --x0")
        traj = simulate_glv(sys, _vector(args.x0), cfg)
    else:
        obj = documents.load(args.game, documents.GAME, documents.EMBEDDING)
        if args.x0 is not None:
            if not isinstance(obj, GameEmbedding):
                raise UsageError("--x0 needs an embedding document; pass --p0 for a bare game")
            p0 = forward_map(obj, _vector(args.x0))
        elif args.p0 is not None:
            p0 = _vector(args.p0)
        else:
            raise UsageError("--game needs --p0 or --x0")
        traj = simulate_replicator(_payoff_matrix(obj), p0, args.time_mode, cfg)
    write_frame(traj.to_frame(), args.out)
    print(f"Wrote {len(traj)} samples to {args.out}")
    return 0


def run_recover(args) -> int:
    e = documents.load(args.embedding, documents.EMBEDDING)
    recovered = recover(e, _read_trajectory(args.traj))
    write_frame(recovered.to_frame(), args.out)
    print(f"Wrote {len(recovered)} recovered samples to {args.out}")
    return 0


def run_regret(args) -> int:
    game = _payoff_matrix(documents.load(args.game, documents.GAME, documents.EMBEDDING))
    series = time_avg_regret(game, _read_trajectory(args.traj), args.time_mode)
    write_frame(series.to_frame(), args.out)
    print(f"Final time-averaged regret {series.avg_regret[-1]:.6g} at T={series.times[-1]:g}")
    return 0


def run_lorenz(args) -> int:
    try:
        params = LorenzParams(sigma=args.sigma, rho=args.rho, beta=args.beta, r=args.r)
    except ValueError as e:
        raise UsageError(str(e)) from e
    cfg = _integrator_config(args)
    x0 = np.asarray(_vector(args.x0) if args.x0 else DEFAULT_X0) + params.r
    e = lorenz_game(params)
    traj = simulate_replicator(e.game, forward_map(e, x0), args.time_mode, cfg)
    recovered = recover(e, traj)
    series = time_avg_regret(e.game, traj)

    prefix = args.out_prefix
    documents.save(e, prefix + 'game.json')
    write_frame(traj.to_frame(), prefix + 'traj.csv')
    write_frame(recovered.to_frame(), prefix + 'recovered.csv')
    write_frame(series.to_frame(), prefix + 'regret.csv')

    print(f"Lorenz game: sigma={params.sigma:g} rho={params.rho:g} beta={params.beta:g} r={params.r:g}")
    print(f"Minimum shifted coordinate: {min_shifted_coordinate(recovered):.6g}")
    print(f"Regret ceiling ln(1/p_min(0)) / T: {regret_bound(traj.states[0]) / series.game_times[-1]:.6g}"
          f" (game time T={series.game_times[-1]:.6g})")
    for T in (10.0, series.times[-1]):
        if T <= series.times[-1]:
            print(f"Time-averaged regret at T={T:g}: {regret_at(series, T):.6g}")
    print(f"Wrote {prefix}game.json, {prefix}traj.csv, {prefix}recovered.csv, {prefix}regret.csv")
    return 0


def run_verify_command(args) -> int:
    unknown = [name for name in (args.only or []) if name not in dict(CHECKS)]
    if unknown:
        raise UsageError(f"unknown check(s) {unknown}")
    report = run_verify(strict=args.strict, seed=args.seed, only=args.only)
    print(report.render())
    return report.exit_code


def _add_integrator_flags(parser, t_end: float, time_mode: str = GAME):
    parser.add_argument('--t-end', type=float, default=t_end, help='Final time')
    parser.add_argument('--tol', type=float, help='Relative and absolute tolerance')
    parser.add_argument('--method', choices=METHODS, help='Integrator')
    parser.add_argument('--sample-dt', type=float, help='Spacing of the output samples')
    parser.add_argument('--time-mode', choices=TIME_MODES, default=time_mode,
                        help="'game' for plain replicator dynamics, 'conjugate' to run on the source clock")


def register_commands(subparsers):
    embed_parser = subparsers.add_parser('embed', help='Compile a GLV system into a matrix game')
    embed_parser.add_argument('--input', required=True, help='GLV system (or polynomial field) document')
    embed_parser.add_argument('--output', required=True, help='Game embedding document to write')
    embed_parser.add_argument('--delta', type=float, help='Boundary correction for polynomial fields')
    embed_parser.set_defaults(handler=run_embed)

    simulate_parser = subparsers.add_parser('simulate', help='Integrate a GLV system or replicator dynamics')
    source = simulate_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--game', help='Payoff matrix or game embedding document')
    source.add_argument('--glv', help='GLV system document')
    start = simulate_parser.add_mutually_exclusive_group()
    start.add_argument('--x0', help='Initial source state, comma separated')
    start.add_argument('--p0', help='Initial simplex point, comma separated')
    _add_integrator_flags(simulate_parser, t_end=10.0)
    simulate_parser.add_argument('--out', required=True, help='Trajectory CSV to write')
    simulate_parser.set_defaults(handler=run_simulate)

    recover_parser = subparsers.add_parser('recover', help='Map a game trajectory back to source coordinates')
    recover_parser.add_argument('--embedding', required=True, help='Game embedding document')
    recover_parser.add_argument('--traj', required=True, help='Replicator trajectory CSV')
    recover_parser.add_argument('--out', required=True, help='Recovered trajectory CSV to write')
    recover_parser.set_defaults(handler=run_recover)

    regret_parser = subparsers.add_parser('regret', help='Time-averaged regret of a replicator trajectory')
    regret_parser.add_argument('--game', required=True, help='Payoff matrix or game embedding document')
    regret_parser.add_argument('--traj', required=True, help='Replicator trajectory CSV')
    regret_parser.add_argument('--out', required=True, help='Regret CSV to write')
    regret_parser.add_argument('--time-mode', choices=TIME_MODES,
                               help="Clock the trajectory was sampled on (default 'game')")
    regret_parser.set_defaults(handler=run_regret)

    lorenz_parser = subparsers.add_parser('lorenz', help='Build, simulate and analyse the Lorenz game')
    lorenz_parser.add_argument('--sigma', type=float, default=10.0)
    lorenz_parser.add_argument('--rho', type=float, default=28.0)
    lorenz_parser.add_argument('--beta', type=float, default=8.0 / 3.0)
    lorenz_parser.add_argument('--r', type=float, help='Shift radius (default 2 (rho + sigma))')
    lorenz_parser.add_argument('--x0', help='Unshifted initial state (default 1,1,200)')
    _add_integrator_flags(lorenz_parser, t_end=REGRET_T_END, time_mode=REGRET_TIME_MODE)
    lorenz_parser.add_argument('--out-prefix', default=os.path.join('output', 'lorenz_'),
                               help='Prefix for game.json, traj.csv, recovered.csv and regret.csv')
    lorenz_parser.set_defaults(handler=run_lorenz)

    verify_parser = subparsers.add_parser('verify', help='Run the invariant suite on built-in fixtures')
    verify_parser.add_argument('--strict', action='store_true', help='Tighten every threshold tenfold')
    verify_parser.add_argument('--only', nargs='+', metavar='CHECK', help='Run only the named checks')
    verify_parser.set_defaults(handler=run_verify_command)
