import argparse
import math
from pathlib import Path
from typing import Optional

from charperiodic.core.cli import emit
from charperiodic.core.exceptions import ProblemFileError
from charperiodic.modules.cases.builder import (
    CaseBundle,
    manufactured,
    remark1_alpha_for_shift,
    remark1_problem,
    remark2_problem,
)
from charperiodic.storage.problem_file import ProblemFile, dumps, load_problem_file


def register(subparsers) -> None:
    case = subparsers.add_parser("case", help="write a built-in problem file")
    kinds = case.add_subparsers(dest="case", required=True, metavar="CASE")

    remark1 = kinds.add_parser("remark1", help="lossless two-wave reflection")
    speed = remark1.add_mutually_exclusive_group(required=True)
    speed.add_argument("--alpha", type=float, help="wave speed a_1 = -a_2")
    speed.add_argument(
        "--shift", type=float, help="round-trip boundary shift; alpha = 2 / shift"
    )
    remark1.set_defaults(handler=run_remark1, parser=remark1)

    remark2 = kinds.add_parser("remark2", help="dissipative reflection with a nontrivial kernel")
    remark2.set_defaults(handler=run_remark2, parser=remark2)

    made = kinds.add_parser("manufactured", help="fill f from the [exact] section of a file")
    made.add_argument("--file", type=Path, required=True, help="problem file with [exact]")
    made.set_defaults(handler=run_manufactured, parser=made)

    for sub in (remark1, remark2, made):
        sub.add_argument("--out", type=Path, default=None, help="write the problem file here")


def _write(bundle: CaseBundle, args: argparse.Namespace, base: Optional[ProblemFile] = None) -> int:
    problem = ProblemFile(
        spec=bundle.spec,
        exact=bundle.exact,
        name=bundle.name,
        notes=bundle.notes,
        **({"numerics": base.numerics} if base is not None else {}),
    )
    emit(dumps(problem), args.out)
    return 0


def run_remark1(args: argparse.Namespace) -> int:
    if args.shift is not None:
        if args.shift == 0:
            args.parser.error("--shift must be nonzero")
        alpha = remark1_alpha_for_shift(args.shift)
    else:
        alpha = args.alpha
    if alpha == 0 or not math.isfinite(alpha):
        args.parser.error("--alpha must be finite and nonzero")
    return _write(remark1_problem(alpha), args)


def run_remark2(args: argparse.Namespace) -> int:
    return _write(remark2_problem(), args)


def run_manufactured(args: argparse.Namespace) -> int:
    base = load_problem_file(args.file)
    if base.exact is None:
        raise ProblemFileError(f"{args.file} has no [exact] section")
    bundle = manufactured(base.spec, base.exact, name=base.name or "manufactured")
    return _write(bundle, args, base)
