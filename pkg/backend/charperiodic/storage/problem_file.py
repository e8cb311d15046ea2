"""
Problem files

TOML documents with 1-based component indices:

    [sizes]
    n = 2
    m = 1

    [a]
    "1" = "-1"
    "2" = "1"

    [b]                 # or [tilde_b] for the factored coupling, never both for a pair
    "2,1" = "3/2"

    [r]
    "1,2" = "1/2"
    "2,1" = "1/2"

    [f]
    "1" = "sin(t)"

    [exact]             # optional closed-form solution
    "1" = "sin(t - x)"

    [numerics]          # optional, defaults from settings
    nx = 64
    nt = 64
    ode_steps = 512
    tol = 1e-8
    assembly_cap = 20000

Values are expression strings (numbers are accepted too). Omitted b, r and f
entries are zero.
"""

import tomllib
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from charperiodic.core.config import get_settings
from charperiodic.core.exceptions import CharPeriodicError, ExpressionError, ProblemFileError
from charperiodic.modules.expr import CoefficientExpr
from charperiodic.modules.model import ProblemSpec, as_expr, assemble_b_from_tilde

SECTIONS = ("case", "sizes", "a", "b", "tilde_b", "r", "f", "exact", "numerics")


def _default(name: str):
    return lambda: getattr(get_settings(), name)


class NumericsConfig(BaseModel):
    """Numerical parameters carried by a problem file"""

    model_config = ConfigDict(extra="forbid")

    nx: int = Field(default_factory=_default("GRID_NX"), ge=1)
    nt: int = Field(default_factory=_default("GRID_NT"), ge=4)
    ode_steps: int = Field(default_factory=_default("ODE_STEPS"), ge=2)
    tol: float = Field(default_factory=_default("TOL"), gt=0)
    assembly_cap: int = Field(default_factory=_default("ASSEMBLY_CAP"), ge=1)
    max_outer: int = Field(default_factory=_default("MAX_OUTER"), ge=1)
    max_inner: int = Field(default_factory=_default("MAX_INNER"), ge=1)
    kernel_threshold: float = Field(default_factory=_default("KERNEL_THRESHOLD"), gt=0)


class ProblemFile(BaseModel):
    """Parsed problem file"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    spec: ProblemSpec
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    exact: Optional[Tuple[CoefficientExpr, ...]] = None
    name: str = ""
    notes: str = ""


# ============= Reading =============


def _index(key: str, n: int, section: str) -> int:
    try:
        value = int(key.strip())
    except ValueError:
        raise ProblemFileError(f"[{section}] key {key!r} is not an index") from None
    if not 1 <= value <= n:
        raise ProblemFileError(f"[{section}] index {value} outside 1..{n}")
    return value - 1


def _pair(key: str, n: int, section: str) -> Tuple[int, int]:
    parts = key.split(",")
    if len(parts) != 2:
        raise ProblemFileError(f"[{section}] key {key!r} must look like \"j,k\"")
    return _index(parts[0], n, section), _index(parts[1], n, section)


def _expr(value: Any, where: str) -> CoefficientExpr:
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise ProblemFileError(f"{where}: expected an expression string or a number")
    try:
        return as_expr(value)
    except ExpressionError as e:
        raise ProblemFileError(f"{where}: {e}") from e


def _vector(table: Mapping[str, Any], n: int, section: str) -> Dict[int, CoefficientExpr]:
    return {_index(k, n, section): _expr(v, f"[{section}] {k}") for k, v in table.items()}


def _matrix(
    table: Mapping[str, Any], n: int, section: str
) -> Dict[Tuple[int, int], CoefficientExpr]:
    return {_pair(k, n, section): _expr(v, f"[{section}] {k}") for k, v in table.items()}


def parse_problem(document: Mapping[str, Any]) -> ProblemFile:
    """
    Build a ProblemFile from a decoded TOML document

    Raises:
        ProblemFileError: Missing or inconsistent data, bad indices or expressions
    """
    unknown = set(document) - set(SECTIONS)
    if unknown:
        raise ProblemFileError(f"unknown sections: {', '.join(sorted(unknown))}")
    sizes = document.get("sizes")
    if not isinstance(sizes, Mapping) or "n" not in sizes or "m" not in sizes:
        raise ProblemFileError("[sizes] with n and m is required")
    n, m = sizes["n"], sizes["m"]
    if not isinstance(n, int) or not isinstance(m, int) or not 1 <= m < n:
        raise ProblemFileError(f"[sizes] needs integers 1 <= m < n, got n={n!r}, m={m!r}")

    a = _vector(document.get("a", {}), n, "a")
    missing = [str(j + 1) for j in range(n) if j not in a]
    if missing:
        raise ProblemFileError(f"[a] is missing components {', '.join(missing)}")
    b = _matrix(document.get("b", {}), n, "b")
    tilde = _matrix(document.get("tilde_b", {}), n, "tilde_b")
    r = _matrix(document.get("r", {}), n, "r")
    f = _vector(document.get("f", {}), n, "f")

    for j, k in tilde:
        if j == k:
            raise ProblemFileError(f"[tilde_b] {j + 1},{k + 1} is on the diagonal")
        if (j, k) in b:
            raise ProblemFileError(f"both b and tilde_b given for {j + 1},{k + 1}")

    try:
        spec = ProblemSpec.build(
            n=n,
            m=m,
            a=[a[j] for j in range(n)],
            b=b,
            r=r,
            f=[f.get(j, 0.0) for j in range(n)],
            tilde_b=tilde or None,
        )
        if tilde:
            spec = assemble_b_from_tilde(spec, partial=True)
        numerics = NumericsConfig(**document.get("numerics", {}))
    except (CharPeriodicError, ValidationError, TypeError) as e:
        raise ProblemFileError(str(e)) from e

    exact = None
    if "exact" in document:
        values = _vector(document["exact"], n, "exact")
        if len(values) != n:
            raise ProblemFileError(f"[exact] needs all {n} components")
        exact = tuple(values[j] for j in range(n))

    case = document.get("case", {})
    return ProblemFile(
        spec=spec,
        numerics=numerics,
        exact=exact,
        name=str(case.get("name", "")),
        notes=str(case.get("notes", "")),
    )


def load_problem_file(path: Union[str, Path]) -> ProblemFile:
    """Read and parse a problem file"""
    try:
        with open(path, "rb") as fh:
            document = tomllib.load(fh)
    except OSError as e:
        raise ProblemFileError(f"cannot read {path}: {e.strerror or e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ProblemFileError(f"{path}: {e}") from e
    return parse_problem(document)


def load(path: Union[str, Path]) -> Tuple[ProblemSpec, NumericsConfig]:
    """Spec and numerics of a problem file"""
    problem = load_problem_file(path)
    return problem.spec, problem.numerics


# ============= Writing =============


def _string(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return _string(str(value))


def dumps(problem: ProblemFile) -> str:
    """
    Deterministic TOML text of a problem file

    The factored coupling is written as [tilde_b] when present; the matching b
    entries are then omitted.
    """
    spec = problem.spec
    n = spec.n
    lines = []

    def section(name: str, items) -> None:
        items = list(items)
        if not items:
            return
        lines.append(f"[{name}]")
        lines.extend(f"{_string(key)} = {_value(value)}" for key, value in items)
        lines.append("")

    if problem.name or problem.notes:
        lines.append("[case]")
        lines.append(f"name = {_string(problem.name)}")
        lines.append(f"notes = {_string(problem.notes)}")
        lines.append("")
    lines.extend(["[sizes]", f"n = {n}", f"m = {spec.m}", ""])
    section("a", ((str(j + 1), spec.a[j].to_text()) for j in range(n)))

    tilde = spec.tilde_b

    def factored(j: int, k: int) -> bool:
        return tilde is not None and tilde[j][k] is not None

    section(
        "b",
        (
            (f"{j + 1},{k + 1}", spec.b[j][k].to_text())
            for j in range(n)
            for k in range(n)
            if not spec.b[j][k].is_zero and not factored(j, k)
        ),
    )
    section(
        "tilde_b",
        (
            (f"{j + 1},{k + 1}", tilde[j][k].to_text())
            for j in range(n)
            for k in range(n)
            if factored(j, k)
        ),
    )
    section(
        "r",
        (
            (f"{j + 1},{k + 1}", spec.r[j][k].to_text())
            for j in range(n)
            for k in range(n)
            if not spec.r[j][k].is_zero
        ),
    )
    section("f", ((str(j + 1), spec.f[j].to_text()) for j in range(n) if not spec.f[j].is_zero))
    if problem.exact is not None:
        section("exact", ((str(j + 1), problem.exact[j].to_text()) for j in range(n)))

    lines.append("[numerics]")
    lines.extend(f"{key} = {_value(value)}" for key, value in problem.numerics.model_dump().items())
    return "\n".join(lines) + "\n"


def write_problem_file(problem: ProblemFile, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(problem), encoding="utf-8")
