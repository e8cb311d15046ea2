import argparse

from charperiodic.core.cli import (
    add_output_argument,
    add_problem_argument,
    emit,
    load_problem,
    positive_int,
)
from charperiodic.modules.dissipativity.analyzer import constants
from charperiodic.storage.reports import dumps_report


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="dissipativity constants S0, T0, S1, T1")
    add_problem_argument(parser)
    parser.add_argument("--grid", type=positive_int, default=None, help="scan grid per direction")
    add_output_argument(parser)
    parser.set_defaults(handler=run_check)


def run_check(args: argparse.Namespace) -> int:
    """Exit 0 iff S0 * T0 < 1"""
    problem = load_problem(args)
    report = constants(problem.spec, args.grid, args.grid, problem.numerics.ode_steps)
    emit(dumps_report(report), args.out)
    return 0 if report.cond_t8 else 1
