"""
Fixed-point solvers for u = C u + D u + F f

The inner loop inverts I - C by the Neumann-type iteration v <- K(L v + g_w) + g_v,
which contracts at rate about S0 * T0; the outer loop is plain Picard on the
coupling D.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from charperiodic.core.config import get_settings
from charperiodic.modules.model import ProblemSpec, as_expr
from charperiodic.modules.operators import DiscreteOperators, get_operators
from charperiodic.modules.solver.residual import integral_defect
from charperiodic.storage.grid import PeriodicGridFunction
from charperiodic.storage.schemas import InversionResult, SolveResult


def _sup(vector: np.ndarray) -> float:
    return float(np.max(np.abs(vector))) if vector.size else 0.0


def _ratios(updates: List[float]) -> List[float]:
    return [b / a if a > 0 else 0.0 for a, b in zip(updates, updates[1:])]


def neumann_inverse(
    ops: DiscreteOperators, g: np.ndarray, tol: float, max_iter: int
) -> Tuple[np.ndarray, int, bool, List[float]]:
    """
    Solve (I - C) u = g for flattened vectors

    Returns:
        (u, iterations, converged, update ratios)
    """
    split = ops.spec.m * ops.block
    g_v, g_w = g[:split], g[split:]
    v = g_v.copy()
    updates: List[float] = []
    converged = False
    for _ in range(max_iter):
        v_next = ops.K @ (ops.L @ v + g_w) + g_v
        updates.append(_sup(v_next - v))
        v = v_next
        if updates[-1] <= tol:
            converged = True
            break
        if not np.isfinite(updates[-1]):
            break
    w = ops.L @ v + g_w
    logger.debug(f"(I - C) inversion: {len(updates)} iterations, last update {updates[-1]:.3g}")
    return np.concatenate([v, w]), len(updates), converged, _ratios(updates)


def _warn_if_not_dissipative(ops: DiscreteOperators) -> None:
    product = ops.s0 * ops.t0
    if product >= 1:
        logger.warning(
            f"S0*T0 = {product:.6g} >= 1 on the operator grid; "
            "the inversion of I - C may not converge"
        )


def invert_I_minus_C(
    spec: ProblemSpec,
    g: PeriodicGridFunction,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    n_steps: Optional[int] = None,
) -> InversionResult:
    """
    Invert I - C on a grid function

    Args:
        spec: Problem data
        g: Right-hand side with n components
        tol: Stop when the sup-norm update of v is at most tol
        max_iter: Iteration cap
        n_steps: ODE steps per unit length

    Returns:
        InversionResult; converged is false when max_iter was exhausted and
        u is then the last iterate
    """
    settings = get_settings()
    tol = settings.TOL if tol is None else tol
    max_iter = settings.MAX_INNER if max_iter is None else max_iter
    if g.components != spec.n:
        raise ValueError(f"g needs {spec.n} components, got {g.components}")
    ops = get_operators(spec, g.nx, g.nt, n_steps)
    _warn_if_not_dissipative(ops)
    u, iterations, converged, ratios = neumann_inverse(ops, g.flat(), tol, max_iter)
    return InversionResult(
        u=PeriodicGridFunction.from_flat(u, spec.n, g.nx, g.nt),
        iterations=iterations,
        converged=converged,
        update_ratios=ratios,
    )


def solve_picard(
    spec: ProblemSpec,
    nx: Optional[int] = None,
    nt: Optional[int] = None,
    tol: Optional[float] = None,
    max_outer: Optional[int] = None,
    max_inner: Optional[int] = None,
    n_steps: Optional[int] = None,
    f: Optional[Sequence] = None,
) -> SolveResult:
    """
    Picard iteration u^{k+1} = (I - C)^{-1} (D u^k + F f)

    Converged means the last update and the residual of the integral system
    are both at most tol. Inner inversions run at tol / 10.

    Args:
        spec: Problem data
        nx, nt: Grid sizes
        tol: Outer tolerance
        max_outer: Outer iteration cap
        max_inner: Inner iteration cap per inversion
        n_steps: ODE steps per unit length
        f: Right-hand sides (spec.f if omitted)
    """
    settings = get_settings()
    tol = settings.TOL if tol is None else tol
    max_outer = settings.MAX_OUTER if max_outer is None else max_outer
    max_inner = settings.MAX_INNER if max_inner is None else max_inner
    ops = get_operators(spec, nx, nt, n_steps)
    _warn_if_not_dissipative(ops)

    f_vector = ops.forcing(None if f is None else [as_expr(v) for v in f])
    inner_tol = 0.1 * tol
    u, inner_total, _, _ = neumann_inverse(ops, f_vector, inner_tol, max_inner)

    updates: List[float] = []
    converged = False
    residual = float("inf")
    for _ in range(max_outer):
        u_next, iterations, _, _ = neumann_inverse(ops, ops.D @ u + f_vector, inner_tol, max_inner)
        inner_total += iterations
        updates.append(_sup(u_next - u))
        u = u_next
        if not np.isfinite(updates[-1]):
            break
        if updates[-1] <= tol:
            residual = _sup(integral_defect(ops, u, f_vector))
            if residual <= tol:
                converged = True
                break
    if not converged and np.isfinite(updates[-1]):
        residual = _sup(integral_defect(ops, u, f_vector))

    f_norm = _sup(f_vector)
    result = SolveResult(
        u=PeriodicGridFunction.from_flat(u, spec.n, ops.nx, ops.nt),
        method="picard",
        nx=ops.nx,
        nt=ops.nt,
        residual_sup=residual,
        outer_iters=len(updates),
        inner_iters_total=inner_total,
        converged=converged,
        contraction_estimates=_ratios(updates),
        amplification=_sup(u) / f_norm if f_norm > 0 else None,
    )
    level = "INFO" if converged else "WARNING"
    logger.log(
        level,
        f"picard: converged={converged} after {result.outer_iters} outer / "
        f"{inner_total} inner iterations, residual {residual:.3g}",
    )
    return result
