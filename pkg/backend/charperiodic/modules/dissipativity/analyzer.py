from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from charperiodic.core.config import get_settings
from charperiodic.core.parallel import map_chunks
from charperiodic.modules.characteristics import TraceBatch, locate, ode_lattice, trace_batch
from charperiodic.modules.expr import evaluate_array
from charperiodic.modules.model import ProblemSpec
from charperiodic.storage.grid import grid_nodes
from charperiodic.storage.schemas import (
    ArgmaxLocation,
    DissipativityReport,
    SufficientConditions,
)


def _edge(spec: ProblemSpec, j: int, batch: TraceBatch) -> int:
    return 0 if j < spec.m else len(batch.lattice) - 1


def _profiles(spec: ProblemSpec, j: int, batch: TraceBatch) -> Tuple[np.ndarray, np.ndarray]:
    """R0_j and R1_j at the anchors of a batch"""
    edge = _edge(spec, j, batch)
    tau_edge = batch.tau[:, edge]
    boundary_x = spec.boundary(j)
    reflection = sum(
        np.abs(evaluate_array(spec.r[j][k], boundary_x, tau_edge)) for k in spec.partners(j)
    )
    r0 = batch.c_factor(edge) * reflection
    r1 = r0 * batch.dtau_dt(edge)
    return r0, r1


def _shape(values: np.ndarray, shape):
    values = values.reshape(shape)
    return float(values) if values.ndim == 0 else values


def r0_profile(spec: ProblemSpec, j: int, x, t, n_steps: Optional[int] = None):
    """
    R0_j(x, t) = c_j(x_j, x, t) * sum_k |r_jk(tau_j(x_j, x, t))|

    The sum runs over the partners of j in the other block; x_j is 0 for the
    first block and 1 for the second.
    """
    x_arr, t_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    batch = trace_batch(spec, j, x_arr.ravel(), t_arr.ravel(), n_steps)
    return _shape(_profiles(spec, j, batch)[0], x_arr.shape)


def r1_profile(spec: ProblemSpec, j: int, x, t, n_steps: Optional[int] = None):
    """R1_j = R0_j * (d tau_j / dt)(x_j, x, t)"""
    x_arr, t_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    batch = trace_batch(spec, j, x_arr.ravel(), t_arr.ravel(), n_steps)
    return _shape(_profiles(spec, j, batch)[1], x_arr.shape)


class DissipativityAnalyzer:
    """
    Scans the reflection profiles on a uniform (x, t) grid
    and reduces them to S0, T0, S1, T1
    """

    def __init__(
        self,
        spec: ProblemSpec,
        grid_x: Optional[int] = None,
        grid_t: Optional[int] = None,
        n_steps: Optional[int] = None,
    ):
        settings = get_settings()
        self.spec = spec
        self.grid_x = settings.DISSIPATIVITY_GRID if grid_x is None else grid_x
        self.grid_t = settings.DISSIPATIVITY_GRID if grid_t is None else grid_t
        self.n_steps = settings.ODE_STEPS if n_steps is None else n_steps
        self.x_nodes, self.t_nodes = grid_nodes(self.grid_x, self.grid_t)
        self.lattice = ode_lattice(self.n_steps, self.x_nodes)
        self.column_index = locate(self.lattice, self.x_nodes)

    def _scan_chunk(self, item: Tuple[int, np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        j, cols = item
        nt = self.grid_t
        batch = TraceBatch(
            self.spec,
            j,
            self.lattice,
            np.repeat(self.column_index[cols], nt),
            np.tile(self.t_nodes, len(cols)),
        )
        r0, r1 = _profiles(self.spec, j, batch)
        return r0.reshape(len(cols), nt), r1.reshape(len(cols), nt)

    def profiles(self) -> Dict[str, np.ndarray]:
        """R0 and R1 on the scan grid, each of shape (n, grid_x + 1, grid_t)"""
        per_chunk = max(1, get_settings().CHUNK_SIZE // self.grid_t)
        columns = np.arange(self.grid_x + 1)
        chunks = [
            (j, columns[i : i + per_chunk])
            for j in range(self.spec.n)
            for i in range(0, len(columns), per_chunk)
        ]
        results = map_chunks(self._scan_chunk, chunks)
        r0 = np.concatenate([r[0] for r in results]).reshape(self.spec.n, self.grid_x + 1, -1)
        r1 = np.concatenate([r[1] for r in results]).reshape(self.spec.n, self.grid_x + 1, -1)
        return {"R0": r0, "R1": r1}

    def _maximum(self, values: np.ndarray, offset: int) -> Tuple[float, ArgmaxLocation]:
        j, i, l = np.unravel_index(np.argmax(values), values.shape)
        location = ArgmaxLocation(
            j=int(j) + offset, x=float(self.x_nodes[i]), t=float(self.t_nodes[l])
        )
        return float(values[j, i, l]), location

    def report(self) -> DissipativityReport:
        m = self.spec.m
        profiles = self.profiles()
        S0, at_S0 = self._maximum(profiles["R0"][:m], 0)
        T0, at_T0 = self._maximum(profiles["R0"][m:], m)
        S1, at_S1 = self._maximum(profiles["R1"][:m], 0)
        T1, at_T1 = self._maximum(profiles["R1"][m:], m)
        report = DissipativityReport(
            S0=S0,
            T0=T0,
            S1=S1,
            T1=T1,
            argmax_S0=at_S0,
            argmax_T0=at_T0,
            argmax_S1=at_S1,
            argmax_T1=at_T1,
            cond_t8=S0 * T0 < 1,
            cond_t81=S1 * T1 < 1,
            grid_x=self.grid_x,
            grid_t=self.grid_t,
        )
        logger.info(
            f"dissipativity on {self.grid_x}x{self.grid_t}: S0*T0={S0 * T0:.6g}, S1*T1={S1 * T1:.6g}"
        )
        return report


def constants(
    spec: ProblemSpec,
    grid_x: Optional[int] = None,
    grid_t: Optional[int] = None,
    n_steps: Optional[int] = None,
) -> DissipativityReport:
    """
    S0, T0, S1, T1 by a dense grid scan

    Args:
        spec: Problem data
        grid_x: x intervals of the scan grid (>= 16)
        grid_t: t nodes of the scan grid (>= 16)
        n_steps: ODE steps per unit length

    Returns:
        DissipativityReport with argmax locations and both conditions
    """
    settings = get_settings()
    grid_x = settings.DISSIPATIVITY_GRID if grid_x is None else grid_x
    grid_t = settings.DISSIPATIVITY_GRID if grid_t is None else grid_t
    if grid_x < 16 or grid_t < 16:
        raise ValueError("dissipativity scan needs at least a 16 x 16 grid")
    return DissipativityAnalyzer(spec, grid_x, grid_t, n_steps).report()


def sufficient_conditions(
    spec: ProblemSpec, samples: Optional[int] = None
) -> SufficientConditions:
    """
    Coefficient-level sufficient conditions for a small S0 * T0

    The reflection magnitudes bound the profiles from above when the diagonal
    damping has the favourable sign: b_jj / a_j >= 0 in the first block makes
    c_j(0, x, t) <= 1, b_jj / a_j <= 0 in the second block makes c_j(1, x, t) <= 1.
    """
    samples = get_settings().VALIDATION_SAMPLES if samples is None else samples
    if samples < 2:
        raise ValueError("sufficient conditions need at least 2 samples")
    xs = np.linspace(0.0, 1.0, samples)
    ts = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    X, T = np.meshgrid(xs, ts, indexing="ij")
    m = spec.m

    def reflection_max(block: List[int]) -> float:
        totals = [
            sum(np.abs(evaluate_array(spec.r[j][k], spec.boundary(j), ts)) for k in spec.partners(j))
            for j in block
        ]
        return float(max(np.max(total) for total in totals))

    def ratio(j: int) -> np.ndarray:
        return evaluate_array(spec.b[j][j], X, T) / evaluate_array(spec.a[j], X, T)

    first = reflection_max(list(range(m)))
    second = reflection_max(list(range(m, spec.n)))
    min_first = float(min(np.min(ratio(j)) for j in range(m)))
    max_second = float(max(np.max(ratio(j)) for j in range(m, spec.n)))
    product_ok = first * second < 1
    signs_ok = min_first >= 0 and max_second <= 0
    return SufficientConditions(
        max_abs_r_first=first,
        max_abs_r_second=second,
        min_b_over_a_first=min_first,
        max_b_over_a_second=max_second,
        reflection_product_below_one=product_ok,
        damping_signs_ok=signs_ok,
        holds=product_ok and signs_ok,
    )
