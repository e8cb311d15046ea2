import argparse
from pathlib import Path
from typing import Optional

import numpy as np
from loguru import logger

from charperiodic.core.cli import (
    add_output_argument,
    add_problem_argument,
    emit,
    load_problem,
    positive_int,
)
from charperiodic.modules.solver.direct import kernel_probe, solve_direct
from charperiodic.modules.solver.iterative import solve_picard
from charperiodic.storage.adapters import get_adapter
from charperiodic.storage.grid import PeriodicGridFunction
from charperiodic.storage.reports import dumps_report


def _add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nx", type=positive_int, default=None, help="x intervals")
    parser.add_argument("--nt", type=positive_int, default=None, help="t nodes (>= 4)")


def register(subparsers) -> None:
    solve = subparsers.add_parser("solve", help="solve the integral system")
    add_problem_argument(solve)
    _add_grid_arguments(solve)
    solve.add_argument("--method", choices=["picard", "direct"], default="picard")
    solve.add_argument("--format", choices=["csv", "binary"], default="csv", help="grid dump format")
    solve.add_argument(
        "--grid-out",
        type=Path,
        default=None,
        help="grid dump path (default: next to the problem file)",
    )
    add_output_argument(solve)
    solve.set_defaults(handler=run_solve, parser=solve)

    kernel = subparsers.add_parser("kernel", help="singular values of I - C - D")
    add_problem_argument(kernel)
    _add_grid_arguments(kernel)
    kernel.add_argument("--threshold", type=float, default=None, help="relative threshold")
    add_output_argument(kernel)
    kernel.set_defaults(handler=run_kernel, parser=kernel)


def _grid(args: argparse.Namespace, problem):
    nx = problem.numerics.nx if args.nx is None else args.nx
    nt = problem.numerics.nt if args.nt is None else args.nt
    if nt < 4:
        args.parser.error("--nt must be at least 4")
    return nx, nt


def _exact_error(problem, u: PeriodicGridFunction) -> Optional[float]:
    if problem.exact is None:
        return None
    exact = PeriodicGridFunction.from_expressions(problem.exact, u.nx, u.nt)
    return float(np.max(np.abs(u.values - exact.values)))


def run_solve(args: argparse.Namespace) -> int:
    """Exit 0 iff the solve converged"""
    problem = load_problem(args)
    numerics = problem.numerics
    nx, nt = _grid(args, problem)
    if args.method == "direct":
        result = solve_direct(
            problem.spec,
            nx,
            nt,
            cap=numerics.assembly_cap,
            n_steps=numerics.ode_steps,
            tol=numerics.tol,
        )
    else:
        result = solve_picard(
            problem.spec,
            nx,
            nt,
            tol=numerics.tol,
            max_outer=numerics.max_outer,
            max_inner=numerics.max_inner,
            n_steps=numerics.ode_steps,
        )
    result = result.model_copy(update={"error_sup": _exact_error(problem, result.u)})

    adapter = get_adapter(args.format)
    target = args.grid_out or args.problem.with_suffix(".solution" + adapter.suffix)
    written = adapter.write(result.u, target)
    logger.info(f"solution grid written to {written}")

    emit(dumps_report(result), args.out)
    return 0 if result.converged else 1


def run_kernel(args: argparse.Namespace) -> int:
    """Exit 0 iff no near-null direction was found"""
    problem = load_problem(args)
    numerics = problem.numerics
    nx, nt = _grid(args, problem)
    threshold = args.threshold if args.threshold is not None else numerics.kernel_threshold
    probe = kernel_probe(
        problem.spec,
        nx,
        nt,
        threshold=threshold,
        cap=numerics.assembly_cap,
        n_steps=numerics.ode_steps,
    )
    emit(dumps_report(probe), args.out)
    return 0 if probe.estimated_dim == 0 else 1
