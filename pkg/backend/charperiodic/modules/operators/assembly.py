"""
Discrete K, L, D and F

For a fixed (spec, nx, nt, n_steps) every operator of the integral system is a
linear map between flattened grid functions, so it is assembled once as a
sparse matrix:

- (Kw)_j(x,t) = c_j(0,x,t) sum_k r_jk(tau) w_k(0, tau),  tau = tau_j(0,x,t),  j < m
- (Lv)_j(x,t) = c_j(1,x,t) sum_k r_jk(tau) v_k(1, tau),  tau = tau_j(1,x,t),  j >= m
- (Du)_j(x,t) = -int_{x_j}^x d_j sum_{k != j} b_jk u_k  along tau_j(., x, t)
- (Ff)_j(x,t) =  int_{x_j}^x d_j f_j                     along tau_j(., x, t)

Boundary values use periodic cubic interpolation in t, interior values the
bilinear interpolant of the grid function, integrals composite Simpson on the
trace nodes.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from loguru import logger

from charperiodic.core.config import get_settings
from charperiodic.core.parallel import map_chunks
from charperiodic.modules.characteristics import TraceBatch, locate, ode_lattice, simpson_weights
from charperiodic.modules.expr import CoefficientExpr, evaluate_array
from charperiodic.modules.model import ProblemSpec
from charperiodic.modules.operators.stencils import periodic_cubic_stencil
from charperiodic.storage.grid import bilinear_stencil, grid_nodes


@dataclass
class _ColumnBlocks:
    """Rows of one component at one x-column (nt rows each)"""

    boundary: sp.csr_matrix  # into w (j < m) or v (j >= m)
    coupling: sp.csr_matrix  # into u
    forcing: np.ndarray
    reflection: np.ndarray  # R0_j on the column


@dataclass
class _ChunkResult:
    columns: List[_ColumnBlocks] = field(default_factory=list)


class DiscreteOperators:
    """
    Sparse K, L, D and the forcing vector F(spec.f) on one grid

    Attributes:
        K: (m * Nn) x ((n - m) * Nn), Nn = (nx + 1) * nt
        L: ((n - m) * Nn) x (m * Nn)
        D: (n * Nn) x (n * Nn)
        reflection_profile: R0_j on the grid, shape (n, nx + 1, nt)
    """

    def __init__(self, spec: ProblemSpec, nx: int, nt: int, n_steps: Optional[int] = None):
        if nx < 1:
            raise ValueError("nx must be at least 1")
        if nt < 4:
            raise ValueError("nt must be at least 4 for the boundary stencil")
        self.spec = spec
        self.nx = nx
        self.nt = nt
        self.n_steps = get_settings().ODE_STEPS if n_steps is None else n_steps
        self.x_nodes, self.t_nodes = grid_nodes(nx, nt)
        self.lattice = ode_lattice(self.n_steps, self.x_nodes)
        self.column_index = locate(self.lattice, self.x_nodes)
        self.block = (nx + 1) * nt
        self.size = spec.n * self.block

        self.K, self.L, self.D, f_vector, profile = self._assemble(with_operators=True, f=spec.f)
        self._forcing_cache = {tuple(spec.f): f_vector}
        self.reflection_profile = profile.reshape(spec.n, nx + 1, nt)
        logger.info(
            f"assembled operators for n={spec.n}, grid {nx}x{nt}, {self.n_steps} ODE steps: "
            f"nnz K={self.K.nnz}, L={self.L.nnz}, D={self.D.nnz}"
        )

    # Public

    @property
    def s0(self) -> float:
        return float(self.reflection_profile[: self.spec.m].max())

    @property
    def t0(self) -> float:
        return float(self.reflection_profile[self.spec.m :].max())

    @property
    def C(self) -> sp.csr_matrix:
        """C u = (K w, L v) as one n x n block matrix"""
        return sp.bmat([[None, self.K], [self.L, None]], format="csr")

    def forcing(self, f: Optional[Sequence[CoefficientExpr]] = None) -> np.ndarray:
        """Flattened F f; cached per right-hand side"""
        key = tuple(self.spec.f if f is None else f)
        if len(key) != self.spec.n:
            raise ValueError(f"need {self.spec.n} right-hand sides, got {len(key)}")
        cached = self._forcing_cache.get(key)
        if cached is None:
            *_, cached, _ = self._assemble(with_operators=False, f=key)
            self._forcing_cache[key] = cached
        return cached.copy()

    # Assembly

    def _assemble(self, with_operators: bool, f: Sequence[CoefficientExpr]):
        spec = self.spec
        per_chunk = max(1, get_settings().CHUNK_SIZE // self.nt)
        columns = np.arange(self.nx + 1)
        chunks = [
            (j, columns[i : i + per_chunk])
            for j in range(spec.n)
            for i in range(0, len(columns), per_chunk)
        ]
        results = map_chunks(lambda item: self._chunk(item[0], item[1], with_operators, f), chunks)
        blocks = [col for result in results for col in result.columns]

        f_vector = np.concatenate([col.forcing for col in blocks])
        profile = np.concatenate([col.reflection for col in blocks])
        if not with_operators:
            return None, None, None, f_vector, profile

        split = spec.m * (self.nx + 1)
        K = sp.vstack([col.boundary for col in blocks[:split]], format="csr")
        L = sp.vstack([col.boundary for col in blocks[split:]], format="csr")
        D = sp.vstack([col.coupling for col in blocks], format="csr")
        return K, L, D, f_vector, profile

    def _chunk(
        self,
        j: int,
        cols: np.ndarray,
        with_operators: bool,
        f: Sequence[CoefficientExpr],
    ) -> _ChunkResult:
        spec, nt, nx = self.spec, self.nt, self.nx
        first_block = j < spec.m
        anchors = np.repeat(self.column_index[cols], nt)
        batch = TraceBatch(spec, j, self.lattice, anchors, np.tile(self.t_nodes, len(cols)))

        edge = 0 if first_block else len(self.lattice) - 1
        boundary_x = spec.boundary(j)
        c_edge = batch.c_factor(edge)
        tau_edge = batch.tau[:, edge]

        partners = list(spec.partners(j))
        r_values = {k: evaluate_array(spec.r[j][k], boundary_x, tau_edge) for k in partners}
        reflection = c_edge * sum(np.abs(r_values[k]) for k in partners)

        boundary_rows = None
        if with_operators:
            boundary_rows = self._boundary_rows(j, c_edge, tau_edge, r_values)

        coupling = [k for k in range(spec.n) if k != j and not spec.b[j][k].is_zero]
        source = f[j]
        result = _ChunkResult()
        for local, i in enumerate(cols):
            rows = slice(local * nt, (local + 1) * nt)
            coupling_block, forcing = self._column_integrals(
                batch, rows, int(self.column_index[i]), first_block,
                coupling if with_operators else [], source,
            )
            result.columns.append(
                _ColumnBlocks(
                    boundary=boundary_rows[rows] if boundary_rows is not None else None,
                    coupling=coupling_block,
                    forcing=forcing,
                    reflection=reflection[rows],
                )
            )
        return result

    def _boundary_rows(self, j, c_edge, tau_edge, r_values) -> sp.csr_matrix:
        """Rows of K (j < m) or L (j >= m) for the anchors of one chunk"""
        spec, nt, nx = self.spec, self.nt, self.nx
        first_block = j < spec.m
        anchors = len(tau_edge)
        width = (spec.n - spec.m if first_block else spec.m) * self.block
        idx, weights = periodic_cubic_stencil(tau_edge, nt)
        rows, cols, data = [], [], []
        for k, r in r_values.items():
            coef = c_edge * r
            if not np.any(coef):
                continue
            offset = (k - spec.m) * self.block if first_block else k * self.block + nx * nt
            rows.append(np.repeat(np.arange(anchors), 4))
            cols.append((offset + idx).ravel())
            data.append((coef[:, None] * weights).ravel())
        if not rows:
            return sp.csr_matrix((anchors, width))
        return sp.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(anchors, width),
        ).tocsr()

    def _column_integrals(
        self,
        batch: TraceBatch,
        rows: slice,
        p: int,
        first_block: bool,
        coupling: List[int],
        source: CoefficientExpr,
    ) -> Tuple[sp.csr_matrix, np.ndarray]:
        """Coupling rows of D and the forcing values for one x-column"""
        spec, nt, nx = self.spec, self.nt, self.nx
        lo, hi = (0, p) if first_block else (p, len(self.lattice) - 1)
        # int_{x_j}^x is +sum over [0, x] in the first block and -sum over [x, 1] in the second
        sign = 1.0 if first_block else -1.0
        xi = self.lattice[lo : hi + 1]
        weights = simpson_weights(xi)
        tau = batch.tau[rows, lo : hi + 1]
        log_c = batch.log_c[rows]
        d = np.exp(log_c[:, lo : hi + 1] - log_c[:, p][:, None]) / batch.a_values[rows, lo : hi + 1]
        kernel = weights[None, :] * d

        forcing = np.zeros(nt)
        if not source.is_zero:
            forcing = sign * np.sum(kernel * evaluate_array(source, xi[None, :], tau), axis=1)

        if not coupling:
            return sp.csr_matrix((nt, self.size)), forcing

        ix, it, wx, wt = bilinear_stencil(xi[None, :], tau, nx, nt)
        it1 = (it + 1) % nt
        local_rows = np.broadcast_to(np.arange(nt)[:, None], tau.shape)
        all_rows, all_cols, all_data = [], [], []
        for k in coupling:
            coef = -sign * kernel * evaluate_array(spec.b[batch.j][k], xi[None, :], tau)
            base = k * self.block
            for cx, wxa in ((ix, wx[0]), (ix + 1, wx[1])):
                for ct, wta in ((it, wt[0]), (it1, wt[1])):
                    all_rows.append(local_rows.ravel())
                    all_cols.append((base + cx * nt + ct).ravel())
                    all_data.append((coef * wxa * wta).ravel())
        block = sp.coo_matrix(
            (np.concatenate(all_data), (np.concatenate(all_rows), np.concatenate(all_cols))),
            shape=(nt, self.size),
        ).tocsr()
        block.sum_duplicates()
        return block, forcing
