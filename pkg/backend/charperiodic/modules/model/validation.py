from typing import List, Optional

import numpy as np
from loguru import logger

from charperiodic.core.config import get_settings
from charperiodic.core.exceptions import ExpressionDomainError, ProblemSpecError
from charperiodic.modules.expr import CoefficientExpr, constant, evaluate_array
from charperiodic.modules.model.spec import ProblemSpec
from charperiodic.storage.schemas import ValidationCheck, ValidationReport

TWO_PI = 2.0 * np.pi


def _sample_grid(samples_x: int, samples_t: int):
    xs = np.linspace(0.0, 1.0, samples_x)
    ts = np.linspace(0.0, TWO_PI, samples_t, endpoint=False)
    return np.meshgrid(xs, ts, indexing="ij")


def _domain_failure(label: str, error: ExpressionDomainError) -> ValidationCheck:
    return ValidationCheck(name="finite", field=label, passed=False, message=str(error))


def _check_nonvanishing(
    label: str, expr: CoefficientExpr, X: np.ndarray, T: np.ndarray, eps_a: float
) -> ValidationCheck:
    values = evaluate_array(expr, X, T)
    abs_values = np.abs(values)
    worst = np.unravel_index(np.argmin(abs_values), abs_values.shape)
    min_abs = float(abs_values[worst])
    same_sign = bool(np.all(values > 0) or np.all(values < 0))
    passed = same_sign and min_abs >= eps_a
    message = ""
    if not same_sign:
        message = "sign change on the sample grid"
    elif not passed:
        message = f"min |a| = {min_abs:.3g} below {eps_a:g}"
    return ValidationCheck(
        name="nonvanishing a",
        field=label,
        passed=passed,
        value=min_abs,
        x=float(X[worst]),
        t=float(T[worst]),
        message=message,
    )


def _check_periodic(
    label: str, expr: CoefficientExpr, X: np.ndarray, T: np.ndarray, tol: float
) -> ValidationCheck:
    defect = np.abs(evaluate_array(expr, X, T + TWO_PI) - evaluate_array(expr, X, T))
    worst = np.unravel_index(np.argmax(defect), defect.shape)
    value = float(defect[worst])
    return ValidationCheck(
        name="periodicity",
        field=label,
        passed=value <= tol,
        value=value,
        x=float(X[worst]),
        t=float(T[worst]),
        message="" if value <= tol else "field is not 2pi-periodic in t",
    )


def _check_reflection(spec: ProblemSpec, j: int, k: int) -> Optional[ValidationCheck]:
    expr = spec.r[j][k]
    label = f"r[{j}][{k}]"
    allowed = (j < spec.m) != (k < spec.m)
    if not allowed and not expr.is_zero:
        return ValidationCheck(
            name="reflection sparsity",
            field=label,
            passed=False,
            message="reflection must couple the first block only with the second",
        )
    if "x" in expr.variables():
        return ValidationCheck(
            name="reflection sparsity",
            field=label,
            passed=False,
            message="reflection coefficients depend on t only",
        )
    return None


def validate(
    spec: ProblemSpec,
    samples_x: Optional[int] = None,
    samples_t: Optional[int] = None,
    eps_a: Optional[float] = None,
) -> ValidationReport:
    """
    Check the standing assumptions on a sample grid

    Sign constancy and |a_j| >= eps_a, 2pi-periodicity of every field, and the
    block sparsity of r. Violations are reported, never raised; a field that
    cannot be evaluated is recorded as a failed "finite" check.

    Args:
        spec: Problem data
        samples_x: x samples on [0, 1] including both ends (>= 2)
        samples_t: t samples on [0, 2pi) (>= 2)
        eps_a: Floor for |a_j|

    Returns:
        ValidationReport
    """
    settings = get_settings()
    samples_x = settings.VALIDATION_SAMPLES if samples_x is None else samples_x
    samples_t = settings.VALIDATION_SAMPLES if samples_t is None else samples_t
    eps_a = settings.EPS_A if eps_a is None else eps_a
    if samples_x < 2 or samples_t < 2:
        raise ProblemSpecError("validation needs at least 2 samples in x and t")

    X, T = _sample_grid(samples_x, samples_t)
    checks: List[ValidationCheck] = []

    for j, a in enumerate(spec.a):
        label = f"a[{j}]"
        try:
            checks.append(_check_nonvanishing(label, a, X, T, eps_a))
        except ExpressionDomainError as e:
            checks.append(_domain_failure(label, e))

    for label, expr in spec.fields().items():
        try:
            checks.append(_check_periodic(label, expr, X, T, settings.PERIODICITY_TOL))
        except ExpressionDomainError as e:
            checks.append(_domain_failure(label, e))

    for j in range(spec.n):
        for k in range(spec.n):
            check = _check_reflection(spec, j, k)
            if check is not None:
                checks.append(check)

    report = ValidationReport.from_checks(checks, samples_x, samples_t)
    for check in report.failures():
        logger.debug(f"validation: {check.name} failed for {check.field}: {check.message}")
    return report


def assemble_b_from_tilde(spec: ProblemSpec, partial: bool = False) -> ProblemSpec:
    """
    Off-diagonal coupling from the factored form

    b_jk = tilde_b_jk * (a_k - a_j) for j != k; the diagonal of b is kept.

    Args:
        spec: Problem data with a tilde_b table
        partial: Keep spec.b[j][k] for pairs without a tilde_b entry instead of
            rejecting them (problem files may mix both forms)

    Raises:
        ProblemSpecError: tilde_b absent or missing an off-diagonal entry
    """
    if spec.tilde_b is None:
        raise ProblemSpecError("spec has no tilde_b table")
    rows = []
    for j in range(spec.n):
        row = []
        for k in range(spec.n):
            tilde = spec.tilde_b[j][k]
            if j == k or (tilde is None and partial):
                row.append(spec.b[j][k])
                continue
            if tilde is None:
                raise ProblemSpecError(f"missing tilde_b[{j}][{k}]")
            if spec.a[k] == spec.a[j]:
                row.append(constant(0.0))
            else:
                row.append(tilde * (spec.a[k] - spec.a[j]))
        rows.append(tuple(row))
    return spec.model_copy(update={"b": tuple(rows)})
