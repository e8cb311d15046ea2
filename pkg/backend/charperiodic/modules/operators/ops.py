from typing import Optional, Sequence

from charperiodic.modules.expr import CoefficientExpr
from charperiodic.modules.model import ProblemSpec, as_expr
from charperiodic.modules.operators.cache import get_operators
from charperiodic.storage.grid import PeriodicGridFunction


def _expect(g: PeriodicGridFunction, components: int, label: str) -> None:
    if g.components != components:
        raise ValueError(f"{label} needs {components} components, got {g.components}")


def apply_K(
    spec: ProblemSpec, w: PeriodicGridFunction, n_steps: Optional[int] = None
) -> PeriodicGridFunction:
    """
    Reflection at x = 0 carried along the characteristics of the first block

    Args:
        spec: Problem data
        w: Second-block components (n - m of them)
        n_steps: ODE steps per unit length

    Returns:
        First-block grid function (m components)
    """
    _expect(w, spec.n - spec.m, "w")
    ops = get_operators(spec, w.nx, w.nt, n_steps)
    return PeriodicGridFunction.from_flat(ops.K @ w.flat(), spec.m, w.nx, w.nt)


def apply_L(
    spec: ProblemSpec, v: PeriodicGridFunction, n_steps: Optional[int] = None
) -> PeriodicGridFunction:
    """Reflection at x = 1 into the second block (mirror of apply_K)"""
    _expect(v, spec.m, "v")
    ops = get_operators(spec, v.nx, v.nt, n_steps)
    return PeriodicGridFunction.from_flat(ops.L @ v.flat(), spec.n - spec.m, v.nx, v.nt)


def apply_C(
    spec: ProblemSpec, u: PeriodicGridFunction, n_steps: Optional[int] = None
) -> PeriodicGridFunction:
    """C u = (K w, L v) for u = (v, w)"""
    _expect(u, spec.n, "u")
    v = u.select(0, spec.m)
    w = u.select(spec.m, spec.n)
    return PeriodicGridFunction.stack(apply_K(spec, w, n_steps), apply_L(spec, v, n_steps))


def apply_D(
    spec: ProblemSpec, u: PeriodicGridFunction, n_steps: Optional[int] = None
) -> PeriodicGridFunction:
    """Off-diagonal coupling integrated along the characteristics"""
    _expect(u, spec.n, "u")
    ops = get_operators(spec, u.nx, u.nt, n_steps)
    return PeriodicGridFunction.from_flat(ops.D @ u.flat(), spec.n, u.nx, u.nt)


def apply_F(
    spec: ProblemSpec,
    f_fields: Optional[Sequence] = None,
    nx: Optional[int] = None,
    nt: Optional[int] = None,
    n_steps: Optional[int] = None,
) -> PeriodicGridFunction:
    """
    Right-hand side integrated along the characteristics

    Args:
        spec: Problem data
        f_fields: n right-hand sides (expressions, text or numbers); spec.f if omitted
        nx, nt: Grid sizes (settings defaults if omitted)
        n_steps: ODE steps per unit length
    """
    ops = get_operators(spec, nx, nt, n_steps)
    f: Optional[Sequence[CoefficientExpr]] = None
    if f_fields is not None:
        f = [as_expr(v) for v in f_fields]
    return PeriodicGridFunction.from_flat(ops.forcing(f), spec.n, ops.nx, ops.nt)
