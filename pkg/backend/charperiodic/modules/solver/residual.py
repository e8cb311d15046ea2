from typing import Optional, Sequence

import numpy as np

from charperiodic.modules.expr import evaluate_array
from charperiodic.modules.model import ProblemSpec, as_expr
from charperiodic.modules.operators import DiscreteOperators, get_operators
from charperiodic.storage.grid import PeriodicGridFunction
from charperiodic.storage.schemas import ClassicalDefect


def integral_defect(ops: DiscreteOperators, u: np.ndarray, f_vector: np.ndarray) -> np.ndarray:
    """u - C u - D u - F f for flattened vectors"""
    split = ops.spec.m * ops.block
    cu = np.concatenate([ops.K @ u[split:], ops.L @ u[:split]])
    return u - cu - ops.D @ u - f_vector


def residual(
    spec: ProblemSpec,
    u: PeriodicGridFunction,
    f: Optional[Sequence] = None,
    n_steps: Optional[int] = None,
) -> float:
    """
    Defect of the integral system at the grid nodes

    Returns:
        max over nodes of |u - (C u + D u + F f)|
    """
    if u.components != spec.n:
        raise ValueError(f"u needs {spec.n} components, got {u.components}")
    ops = get_operators(spec, u.nx, u.nt, n_steps)
    f_vector = ops.forcing(None if f is None else [as_expr(v) for v in f])
    defect = integral_defect(ops, u.flat(), f_vector)
    return float(np.max(np.abs(defect)))


def classical_defect(
    spec: ProblemSpec, u: PeriodicGridFunction, f: Optional[Sequence] = None
) -> ClassicalDefect:
    """
    Defect of the differential form: du/dt + a du/dx + b u - f and the reflection conditions

    Derivatives by finite differences on the grid: centered and periodic in t,
    second order (one-sided at the ends) in x.
    """
    if u.nx < 2:
        raise ValueError("classical defect needs nx >= 2")
    f_exprs = spec.f if f is None else tuple(as_expr(v) for v in f)
    xs, ts = u.nodes()
    X, T = np.meshgrid(xs, ts, indexing="ij")
    values = u.values
    dt = ts[1] - ts[0]
    du_dt = (np.roll(values, -1, axis=2) - np.roll(values, 1, axis=2)) / (2 * dt)
    du_dx = np.gradient(values, xs, axis=1, edge_order=2)

    pde = 0.0
    for j in range(spec.n):
        defect = du_dt[j] + evaluate_array(spec.a[j], X, T) * du_dx[j]
        for k in range(spec.n):
            if not spec.b[j][k].is_zero:
                defect = defect + evaluate_array(spec.b[j][k], X, T) * values[k]
        defect = defect - evaluate_array(f_exprs[j], X, T)
        pde = max(pde, float(np.max(np.abs(defect))))

    boundary = 0.0
    for j in range(spec.n):
        i = 0 if j < spec.m else u.nx
        mismatch = values[j, i].copy()
        for k in spec.partners(j):
            mismatch -= evaluate_array(spec.r[j][k], spec.boundary(j), ts) * values[k, i]
        boundary = max(boundary, float(np.max(np.abs(mismatch))))

    return ClassicalDefect(pde_sup=pde, boundary_sup=boundary)
