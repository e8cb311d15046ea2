"""
Command-line entry point

    charperiodic [--threads N] [--log-level LEVEL] COMMAND ...

Reports go to stdout (or --out), diagnostics to stderr. Exit codes: 0/1 for the
verdict of a command, 2 for usage errors, 3 when the problem file cannot be
loaded, 4 for any other library error.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from charperiodic import __version__
from charperiodic.core.config import get_settings
from charperiodic.core.exceptions import CharPeriodicError, ExpressionError, ProblemFileError
from charperiodic.core.logging import configure_logging
from charperiodic.core.parallel import set_thread_limit
from charperiodic.modules.cases import commands as cases_commands
from charperiodic.modules.characteristics import commands as characteristics_commands
from charperiodic.modules.dissipativity import commands as dissipativity_commands
from charperiodic.modules.model import commands as model_commands
from charperiodic.modules.solver import commands as solver_commands

EXIT_USAGE = 2
EXIT_LOAD = 3
EXIT_FAILURE = 4


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Time-periodic solutions of hyperbolic systems with reflection "
        "boundary conditions, by integration along characteristics",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: CHARPERIODIC_THREADS, else all cores)",
    )
    parser.add_argument("--log-level", default=None, help=f"default {settings.LOG_LEVEL}")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    model_commands.register(subparsers)
    dissipativity_commands.register(subparsers)
    characteristics_commands.register(subparsers)
    solver_commands.register(subparsers)
    cases_commands.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and dispatch a subcommand

    Args:
        argv: Arguments without the program name (sys.argv[1:] if None)

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        handler_id = configure_logging(args.log_level or get_settings().LOG_LEVEL)
    except ValueError as e:
        print(f"{parser.prog}: {e}", file=sys.stderr)
        return EXIT_USAGE
    set_thread_limit(args.threads)

    try:
        return args.handler(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (ProblemFileError, ExpressionError) as e:
        print(f"{parser.prog}: cannot load problem: {e}", file=sys.stderr)
        return EXIT_LOAD
    except CharPeriodicError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        print(f"{parser.prog}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as e:
        print(f"{parser.prog}: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_thread_limit(None)
        logger.remove(handler_id)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
