"""
Dense solvers for (I - C - D) u = F f

The matrix is built column by column from the discrete operators, so it is the
exact matrix of the iteration the Picard solver runs; LU with partial pivoting
and a full SVD are then used as reference solver and kernel probe.
"""

import warnings
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from scipy.linalg import LinAlgError, LinAlgWarning, lu_factor, lu_solve, svd

from charperiodic.core.config import get_settings
from charperiodic.core.exceptions import AssemblyCapError, SingularSystemError
from charperiodic.core.parallel import map_chunks
from charperiodic.modules.model import ProblemSpec, as_expr
from charperiodic.modules.operators import DiscreteOperators, get_operators
from charperiodic.modules.solver.residual import integral_defect
from charperiodic.storage.grid import PeriodicGridFunction
from charperiodic.storage.schemas import KernelProbe, SolveResult

COLUMN_BLOCK = 256


def _operators_within_cap(
    spec: ProblemSpec,
    nx: Optional[int],
    nt: Optional[int],
    cap: Optional[int],
    n_steps: Optional[int],
) -> DiscreteOperators:
    settings = get_settings()
    nx = settings.GRID_NX if nx is None else nx
    nt = settings.GRID_NT if nt is None else nt
    cap = settings.ASSEMBLY_CAP if cap is None else cap
    unknowns = spec.n * (nx + 1) * nt
    if unknowns > cap:
        raise AssemblyCapError(
            f"dense assembly needs {unknowns} unknowns, above the cap of {cap}"
        )
    return get_operators(spec, nx, nt, n_steps)


def _dense(ops: DiscreteOperators) -> np.ndarray:
    size = ops.size
    coupled = (ops.C + ops.D).tocsr()

    def columns(start: int) -> np.ndarray:
        stop = min(start + COLUMN_BLOCK, size)
        unit = np.zeros((size, stop - start))
        unit[np.arange(start, stop), np.arange(stop - start)] = 1.0
        return unit - coupled @ unit

    blocks = map_chunks(columns, range(0, size, COLUMN_BLOCK))
    return np.hstack(blocks) if blocks else np.zeros((0, 0))


def assemble_dense(
    spec: ProblemSpec,
    nx: Optional[int] = None,
    nt: Optional[int] = None,
    cap: Optional[int] = None,
    n_steps: Optional[int] = None,
) -> np.ndarray:
    """
    Dense matrix of I - C - D, one column per grid basis function

    Raises:
        AssemblyCapError: n * (nx + 1) * nt above the cap
    """
    return _dense(_operators_within_cap(spec, nx, nt, cap, n_steps))


def solve_direct(
    spec: ProblemSpec,
    nx: Optional[int] = None,
    nt: Optional[int] = None,
    f: Optional[Sequence] = None,
    cap: Optional[int] = None,
    n_steps: Optional[int] = None,
    tol: Optional[float] = None,
) -> SolveResult:
    """
    Solve the dense system by LU with partial pivoting

    Raises:
        AssemblyCapError: System above the assembly cap
        SingularSystemError: Smallest relative pivot below SINGULAR_PIVOT_TOL
    """
    settings = get_settings()
    tol = settings.TOL if tol is None else tol
    ops = _operators_within_cap(spec, nx, nt, cap, n_steps)
    matrix = _dense(ops)
    f_vector = ops.forcing(None if f is None else [as_expr(v) for v in f])

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(matrix, check_finite=False)
    except LinAlgError as e:
        raise SingularSystemError(f"{e}; the kernel is likely nontrivial, see kernel_probe") from e

    pivots = np.abs(np.diag(lu))
    relative = pivots.min() / pivots.max() if pivots.max() > 0 else 0.0
    if relative < settings.SINGULAR_PIVOT_TOL:
        raise SingularSystemError(
            f"numerically singular system (relative pivot {relative:.3g}); "
            "the kernel is likely nontrivial, see kernel_probe"
        )

    u = lu_solve((lu, piv), f_vector, check_finite=False)
    residual = float(np.max(np.abs(integral_defect(ops, u, f_vector))))
    f_norm = float(np.max(np.abs(f_vector)))
    logger.info(f"direct solve on {ops.size} unknowns: residual {residual:.3g}")
    return SolveResult(
        u=PeriodicGridFunction.from_flat(u, spec.n, ops.nx, ops.nt),
        method="direct",
        nx=ops.nx,
        nt=ops.nt,
        residual_sup=residual,
        outer_iters=1,
        inner_iters_total=0,
        converged=residual <= tol,
        contraction_estimates=[],
        amplification=float(np.max(np.abs(u))) / f_norm if f_norm > 0 else None,
    )


def kernel_probe(
    spec: ProblemSpec,
    nx: Optional[int] = None,
    nt: Optional[int] = None,
    threshold: Optional[float] = None,
    cap: Optional[int] = None,
    n_steps: Optional[int] = None,
    with_vectors: bool = False,
) -> KernelProbe:
    """
    Count near-null directions of I - C - D

    Args:
        spec: Problem data
        nx, nt: Grid sizes
        threshold: Relative threshold on sigma / sigma_max
        cap: Assembly cap
        n_steps: ODE steps per unit length
        with_vectors: Also return the right singular vectors of the near-null
            directions as grid functions

    Returns:
        KernelProbe with singular values in descending order
    """
    settings = get_settings()
    threshold = settings.KERNEL_THRESHOLD if threshold is None else threshold
    ops = _operators_within_cap(spec, nx, nt, cap, n_steps)
    matrix = _dense(ops)

    if with_vectors:
        _, sigma, vh = svd(matrix, check_finite=False)
    else:
        sigma = svd(matrix, compute_uv=False, check_finite=False)
        vh = None

    largest = sigma[0] if sigma.size else 0.0
    small = np.flatnonzero(sigma < threshold * largest) if largest > 0 else np.arange(sigma.size)
    vectors = None
    if vh is not None:
        vectors = [
            PeriodicGridFunction.from_flat(vh[i], spec.n, ops.nx, ops.nt) for i in small
        ]
    logger.info(
        f"kernel probe on {ops.size} unknowns: {small.size} singular values below "
        f"{threshold:g} * sigma_max"
    )
    return KernelProbe(
        singular_values=[float(s) for s in sigma],
        threshold=threshold,
        estimated_dim=int(small.size),
        codim_estimate=int(small.size),
        unknowns=ops.size,
        vectors=vectors,
    )
