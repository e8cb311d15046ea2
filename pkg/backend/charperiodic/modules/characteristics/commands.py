import argparse
import io

import numpy as np

from charperiodic.core.cli import (
    add_output_argument,
    add_problem_argument,
    emit,
    load_problem,
    positive_int,
)
from charperiodic.modules.characteristics.tracer import trace


def register(subparsers) -> None:
    parser = subparsers.add_parser("trace", help="sample one characteristic as CSV (xi, tau)")
    add_problem_argument(parser)
    parser.add_argument("--j", type=positive_int, required=True, help="component (1-based)")
    parser.add_argument("--x", type=float, required=True, help="anchor position in [0, 1]")
    parser.add_argument("--t", type=float, required=True, help="anchor time")
    parser.add_argument("--steps", type=positive_int, default=None, help="ODE steps per unit xi")
    add_output_argument(parser)
    parser.set_defaults(handler=run_trace, parser=parser)


def run_trace(args: argparse.Namespace) -> int:
    problem = load_problem(args)
    spec = problem.spec
    if args.j > spec.n:
        args.parser.error(f"--j must be between 1 and {spec.n}")
    if not 0.0 <= args.x <= 1.0:
        args.parser.error("--x must lie in [0, 1]")
    steps = problem.numerics.ode_steps if args.steps is None else args.steps
    result = trace(spec, args.j - 1, args.x, args.t, steps)
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        np.column_stack([result.xi_nodes, result.tau_values]),
        fmt="%.17g",
        delimiter=",",
        header="xi,tau",
        comments="",
    )
    emit(buffer.getvalue(), args.out)
    return 0
