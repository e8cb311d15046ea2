from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from charperiodic.core.config import get_settings
from charperiodic.core.exceptions import BoundaryConditionError, ProblemSpecError
from charperiodic.modules.characteristics import tau_at
from charperiodic.modules.expr import CoefficientExpr, constant, evaluate_array, parse, substitute
from charperiodic.modules.model import ProblemSpec, as_expr

TWO_PI = 2.0 * np.pi

# Largest denominator accepted when deciding whether shift / 2pi is rational
MAX_DENOMINATOR = 64


class CaseBundle(BaseModel):
    """A ready-to-run problem with its right-hand side and, when known, the exact solution"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    spec: ProblemSpec
    exact: Optional[Tuple[CoefficientExpr, ...]] = None
    notes: str = ""
    shift: Optional[float] = None
    commensurate: Optional[bool] = None

    @property
    def f_fields(self) -> Tuple[CoefficientExpr, ...]:
        return self.spec.f


# ============= Boundary shift =============


def boundary_shift(spec: ProblemSpec, t: float = 0.0, n_steps: Optional[int] = None) -> float:
    """
    Time lost on one round trip 1 -> 0 -> 1 of the two-component reflection

    Follows the first component's characteristic from x = 1 back to x = 0, then
    the second component's from x = 0 back to x = 1, and returns t minus the
    arrival time. For remark1_problem(alpha) this is 2 / alpha.
    """
    if spec.n != 2 or spec.m != 1:
        raise ProblemSpecError("boundary_shift needs n = 2, m = 1")
    at_left = tau_at(spec, 0, 0.0, 1.0, t, n_steps)
    at_right = tau_at(spec, 1, 1.0, 0.0, at_left, n_steps)
    return t - at_right


def is_commensurate(shift: float, max_denominator: int = MAX_DENOMINATOR) -> bool:
    """shift / 2pi is a fraction p/q with q <= max_denominator (to 1e-9)"""
    ratio = shift / TWO_PI
    approx = Fraction(ratio).limit_denominator(max_denominator)
    return abs(ratio - float(approx)) <= 1e-9 * max(1.0, abs(ratio))


def remark1_alpha_for_shift(shift: float) -> float:
    """Speed alpha whose round-trip shift equals the given one"""
    if shift == 0:
        raise ValueError("shift must be nonzero")
    return 2.0 / shift


# ============= Built-in problems =============


def remark1_problem(alpha: float) -> CaseBundle:
    """
    Two waves reflected into each other without loss

    a_1 = alpha, a_2 = -alpha, no coupling, r_12 = r_21 = 1, f = 0. Both
    dissipativity constants equal 1. Boundary data repeat after the round-trip
    shift 2/alpha, so the kernel is large when that shift is a rational
    multiple of 2pi.
    """
    if alpha == 0:
        raise ProblemSpecError("alpha must be nonzero")
    spec = ProblemSpec.build(
        n=2,
        m=1,
        a=[alpha, -alpha],
        r={(0, 1): 1.0, (1, 0): 1.0},
    )
    shift = boundary_shift(spec)
    commensurate = is_commensurate(shift)
    notes = (
        f"round-trip boundary shift {shift:.12g} (= 2/alpha); "
        f"shift/2pi {'is' if commensurate else 'is not'} rational with denominator <= "
        f"{MAX_DENOMINATOR}. Constant data solve the homogeneous problem for every alpha. "
        "The shift is derived from the characteristics: with a_1 = alpha the boundary time "
        "is t - x/alpha, so the classical statement in terms of 2*alpha corresponds to "
        "alpha -> 1/alpha here."
    )
    logger.debug(f"remark1 case: alpha={alpha}, shift={shift}")
    return CaseBundle(
        name="remark1",
        spec=spec,
        exact=(constant(1.0), constant(1.0)),
        notes=notes,
        shift=shift,
        commensurate=commensurate,
    )


def remark2_problem() -> CaseBundle:
    """
    Dissipative reflection with a coupling that creates solutions

    a_1 = a_2 = 1, b_21 = 3/2, r_12 = r_21 = 1/2, f = 0. S0 = T0 = 1/2, yet
    u_1 = U(t - x), u_2 = (2 - 3x/2) U(t - x) solves the homogeneous problem for
    every 2pi-periodic U; the bundle carries U = sin.
    """
    spec = ProblemSpec.build(
        n=2,
        m=1,
        a=[1.0, 1.0],
        b={(1, 0): 1.5},
        r={(0, 1): 0.5, (1, 0): 0.5},
    )
    exact = (parse("sin(t - x)"), parse("(2 - 3*x/2) * sin(t - x)"))
    notes = (
        "homogeneous problem with an infinite-dimensional kernel although S0*T0 = 1/4; "
        "exact carries the member U = sin of the family "
        "u_1 = U(t - x), u_2 = (2 - 3x/2) U(t - x)"
    )
    return CaseBundle(name="remark2", spec=spec, exact=exact, notes=notes)


# ============= Manufactured solutions =============


def _check_exact(spec: ProblemSpec, exact: Sequence[CoefficientExpr], samples: int) -> None:
    settings = get_settings()
    if samples < 2:
        raise ProblemSpecError("the exact-solution checks need at least 2 samples")
    ts = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    xs = np.linspace(0.0, 1.0, samples)
    X, T = np.meshgrid(xs, ts, indexing="ij")
    for j, u in enumerate(exact):
        drift = np.max(np.abs(evaluate_array(u, X, T + TWO_PI) - evaluate_array(u, X, T)))
        if drift > settings.BC_TOL:
            raise BoundaryConditionError(f"exact[{j}] is not 2pi-periodic (defect {drift:.3g})")
    for j in range(spec.n):
        x_j = spec.boundary(j)
        mismatch = evaluate_array(exact[j], x_j, ts)
        for k in spec.partners(j):
            mismatch = mismatch - evaluate_array(spec.r[j][k], x_j, ts) * evaluate_array(
                exact[k], x_j, ts
            )
        worst = float(np.max(np.abs(mismatch)))
        if worst > settings.BC_TOL:
            raise BoundaryConditionError(
                f"exact solution violates the reflection condition of component {j} "
                f"at x = {x_j:g} by {worst:.3g}"
            )


def _central_difference(expr: CoefficientExpr, variable: str, step: float) -> CoefficientExpr:
    var = parse(variable)
    forward = substitute(expr, **{variable: var + step})
    backward = substitute(expr, **{variable: var - step})
    return (forward - backward) / (2 * step)


def manufactured(
    spec_skeleton: ProblemSpec,
    exact: Sequence,
    name: str = "manufactured",
    samples: Optional[int] = None,
) -> CaseBundle:
    """
    Right-hand side for which a prescribed function solves the problem

    f_j = du_j/dt + a_j du_j/dx + sum_k b_jk u_k with both derivatives taken by
    central differences of step FD_STEP, kept as expressions so the bundle can
    be written to a problem file.

    Args:
        spec_skeleton: a, b, r of the problem (its f is replaced)
        exact: n closed-form components (expressions, text or numbers)
        name: Bundle name
        samples: Sample count per direction for the periodicity and boundary checks

    Raises:
        BoundaryConditionError: exact is not periodic or violates the reflection
            conditions beyond BC_TOL
    """
    settings = get_settings()
    exact_exprs = tuple(as_expr(v) for v in exact)
    if len(exact_exprs) != spec_skeleton.n:
        raise ProblemSpecError(f"need {spec_skeleton.n} exact components, got {len(exact_exprs)}")
    samples = settings.VALIDATION_SAMPLES if samples is None else samples
    _check_exact(spec_skeleton, exact_exprs, samples)

    step = settings.FD_STEP
    f = []
    for j in range(spec_skeleton.n):
        terms = []
        u = exact_exprs[j]
        if not u.is_zero:
            terms.append(_central_difference(u, "t", step))
            terms.append(spec_skeleton.a[j] * _central_difference(u, "x", step))
        for k in range(spec_skeleton.n):
            if not spec_skeleton.b[j][k].is_zero and not exact_exprs[k].is_zero:
                terms.append(spec_skeleton.b[j][k] * exact_exprs[k])
        total = terms[0] if terms else constant(0.0)
        for term in terms[1:]:
            total = total + term
        f.append(total)

    return CaseBundle(
        name=name,
        spec=spec_skeleton.with_f(f),
        exact=exact_exprs,
        notes="right-hand side manufactured from the exact solution by central differences",
    )
