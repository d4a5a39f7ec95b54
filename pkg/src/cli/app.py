import argparse
import logging
import sys

from src.cli.commands import register_commands
from src.config import get_log_level, get_seed
from src.core.errors import GlvGameError, UsageError

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises UsageError (exit code 64) instead of exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog='glvgame',
        description='Embed Lotka-Volterra systems in matrix games and study their replicator dynamics.',
    )
    parser.add_argument('--seed', type=int, default=None, help='Seed for all pseudo-randomness')
    parser.add_argument('--log-level', type=str.upper, choices=LOG_LEVELS, default=None,
                        help='Logging level (default from GLVGAME_LOG_LEVEL, else WARNING)')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=ArgumentParser)
    subparsers.required = True
    register_commands(subparsers)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    """
    Parses the command line into a namespace with the chosen `command` and
    its `handler`.

    Raises:
        UsageError: on unknown flags, missing required flags or bad values.
    """
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = get_seed()
    if args.seed < 0:
        raise UsageError(f"--seed must be non-negative, got {args.seed}")
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return e.exit_code
    logging.basicConfig(
        level=args.log_level or get_log_level(),
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    try:
        return args.handler(args)
    except GlvGameError as e:
        logger.error("%s failed: %s", args.command, e)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
