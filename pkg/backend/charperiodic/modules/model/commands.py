import argparse

from charperiodic.core.cli import (
    add_output_argument,
    add_problem_argument,
    emit,
    load_problem,
    positive_int,
)
from charperiodic.modules.model.validation import validate
from charperiodic.storage.reports import dumps_report


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="check the standing assumptions")
    add_problem_argument(parser)
    parser.add_argument("--samples", type=positive_int, default=None, help="samples per direction")
    add_output_argument(parser)
    parser.set_defaults(handler=run_validate)


def run_validate(args: argparse.Namespace) -> int:
    """Exit 0 iff every check passed"""
    problem = load_problem(args)
    report = validate(problem.spec, args.samples, args.samples)
    emit(dumps_report(report), args.out)
    return 0 if report.passed else 1
