"""Helpers shared by the subcommand modules"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Union

from charperiodic.storage.problem_file import ProblemFile, load_problem_file


def add_problem_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("problem", type=Path, help="problem file (TOML)")


def add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out", type=Path, default=None, help="write the report here instead of stdout"
    )


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def load_problem(args: argparse.Namespace) -> ProblemFile:
    return load_problem_file(args.problem)


def emit(data: Union[bytes, str], out: Optional[Path]) -> None:
    """Write a report to --out, or to stdout when no path was given"""
    payload = data.encode("utf-8") if isinstance(data, str) else data
    if out is not None:
        out.write_bytes(payload)
        return
    sys.stdout.buffer.write(payload)
    sys.stdout.flush()
