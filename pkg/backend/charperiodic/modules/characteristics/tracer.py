"""
Characteristics of the j-th transport operator

tau_j(xi, x, t) solves d tau / d xi = 1 / a_j(xi, tau), tau(x) = t. All anchors
of a batch share one xi-lattice; each anchor sits on a lattice node and is
integrated toward both ends with the classical fourth-order Runge-Kutta method.
"""

from typing import Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from scipy.integrate import cumulative_simpson

from charperiodic.core.config import get_settings
from charperiodic.core.exceptions import CharacteristicBlowUpError
from charperiodic.modules.characteristics.lattice import locate, ode_lattice
from charperiodic.modules.expr import evaluate_array
from charperiodic.modules.model import ProblemSpec


class TraceBatch:
    """
    Characteristics of one component through many anchors

    Attributes:
        j: Component index
        lattice: Shared xi nodes on [0, 1]
        anchor_index: Lattice index of each anchor's x
        t0: Anchor times
        tau: tau[row, q] = tau_j(lattice[q], x_row, t_row)
    """

    def __init__(
        self,
        spec: ProblemSpec,
        j: int,
        lattice: np.ndarray,
        anchor_index: np.ndarray,
        t0: np.ndarray,
        eps_a: Optional[float] = None,
        fd_step: Optional[float] = None,
    ):
        settings = get_settings()
        self.spec = spec
        self.j = j
        self.lattice = lattice
        self.anchor_index = np.asarray(anchor_index, dtype=np.int64)
        self.t0 = np.asarray(t0, dtype=float)
        self.eps_a = eps_a if eps_a is not None else settings.EPS_A
        self.fd_step = fd_step if fd_step is not None else settings.FD_STEP
        self._rows = np.arange(len(self.t0))
        self._a_values: Optional[np.ndarray] = None
        self._log_c: Optional[np.ndarray] = None
        self._log_dt: Optional[np.ndarray] = None
        self.tau = self._integrate()

    # ODE

    def _speed(self, xi: float, tau: np.ndarray) -> np.ndarray:
        a = evaluate_array(self.spec.a[self.j], xi, tau)
        if a.size and np.min(np.abs(a)) < self.eps_a:
            raise CharacteristicBlowUpError(
                f"|a_{self.j}| < {self.eps_a:g} at xi={xi:.6g} along a characteristic"
            )
        return 1.0 / a

    def _rk4(self, xi: float, tau: np.ndarray, h: float) -> np.ndarray:
        k1 = self._speed(xi, tau)
        k2 = self._speed(xi + h / 2, tau + h / 2 * k1)
        k3 = self._speed(xi + h / 2, tau + h / 2 * k2)
        k4 = self._speed(xi + h, tau + h * k3)
        return tau + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    def _integrate(self) -> np.ndarray:
        lattice = self.lattice
        size = len(lattice)
        order = np.argsort(self.anchor_index, kind="stable")
        start = self.anchor_index[order]
        t_sorted = self.t0[order]

        tau = np.empty((len(order), size))
        tau[np.arange(len(order)), start] = t_sorted

        # Rows are sorted by anchor index, so the active rows of a forward step
        # form a prefix and those of a backward step form a suffix.
        cur = t_sorted.copy()
        for q in range(int(start.min(initial=size - 1)), size - 1):
            count = int(np.searchsorted(start, q, side="right"))
            if count == 0:
                continue
            cur[:count] = self._rk4(lattice[q], cur[:count], lattice[q + 1] - lattice[q])
            tau[:count, q + 1] = cur[:count]

        cur = t_sorted.copy()
        for q in range(int(start.max(initial=0)), 0, -1):
            first = int(np.searchsorted(start, q, side="left"))
            if first == len(start):
                continue
            cur[first:] = self._rk4(lattice[q], cur[first:], lattice[q - 1] - lattice[q])
            tau[first:, q - 1] = cur[first:]

        result = np.empty_like(tau)
        result[order] = tau
        return result

    # Fields along the traces

    @property
    def a_values(self) -> np.ndarray:
        """a_j(xi_q, tau_q) on every trace node"""
        if self._a_values is None:
            self._a_values = evaluate_array(self.spec.a[self.j], self.lattice[None, :], self.tau)
        return self._a_values

    @property
    def slopes(self) -> np.ndarray:
        return 1.0 / self.a_values

    def field(self, expr) -> np.ndarray:
        """Any coefficient field sampled along the traces"""
        return evaluate_array(expr, self.lattice[None, :], self.tau)

    def cumulative(self, integrand: np.ndarray) -> np.ndarray:
        """Running integral from xi = 0 along each trace (composite Simpson)"""
        return cumulative_simpson(integrand, x=self.lattice, axis=-1, initial=0.0)

    @property
    def log_c(self) -> np.ndarray:
        """Running integral of b_jj / a_j"""
        if self._log_c is None:
            b_jj = self.spec.b[self.j][self.j]
            if b_jj.is_zero:
                self._log_c = np.zeros_like(self.tau)
            else:
                self._log_c = self.cumulative(self.field(b_jj) / self.a_values)
        return self._log_c

    @property
    def log_dt(self) -> np.ndarray:
        """Running integral of (d_t a_j) / a_j^2"""
        if self._log_dt is None:
            a = self.spec.a[self.j]
            if "t" not in a.variables():
                self._log_dt = np.zeros_like(self.tau)
            else:
                h = self.fd_step
                x = self.lattice[None, :]
                da = (evaluate_array(a, x, self.tau + h) - evaluate_array(a, x, self.tau - h)) / (2 * h)
                self._log_dt = self.cumulative(da / self.a_values**2)
        return self._log_dt

    def _anchor(self, values: np.ndarray) -> np.ndarray:
        return values[self._rows, self.anchor_index]

    def c_factor(self, q) -> np.ndarray:
        """c_j(xi_q, x, t) = exp of the integral of b_jj/a_j from x to xi_q"""
        return np.exp(self.log_c[self._rows, q] - self._anchor(self.log_c))

    def d_factor(self, q) -> np.ndarray:
        """d_j(xi_q, x, t) = c_j / a_j(xi_q, tau_q)"""
        return self.c_factor(q) / self.a_values[self._rows, q]

    def dtau_dt(self, q) -> np.ndarray:
        """exp of the integral of d_t a_j / a_j^2 from xi_q to x"""
        return np.exp(self._anchor(self.log_dt) - self.log_dt[self._rows, q])

    def dtau_dx(self, q) -> np.ndarray:
        """-(1 / a_j(x, t)) times dtau_dt"""
        return -self.dtau_dt(q) / self._anchor(self.a_values)

    def at(self, xi) -> np.ndarray:
        """
        Dense output: tau at one xi per row, by cubic Hermite interpolation
        between the ODE nodes (slopes 1/a_j)
        """
        xi = np.broadcast_to(np.asarray(xi, dtype=float), self.t0.shape)
        lattice = self.lattice
        k = np.clip(np.searchsorted(lattice, xi, side="right") - 1, 0, len(lattice) - 2)
        h = lattice[k + 1] - lattice[k]
        s = (xi - lattice[k]) / h
        y0 = self.tau[self._rows, k]
        y1 = self.tau[self._rows, k + 1]
        m0 = self.slopes[self._rows, k] * h
        m1 = self.slopes[self._rows, k + 1] * h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s**2 * (3 - 2 * s)
        h11 = s**2 * (s - 1)
        return h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1


def trace_batch(
    spec: ProblemSpec,
    j: int,
    x,
    t,
    n_steps: Optional[int] = None,
    extra_nodes=None,
) -> TraceBatch:
    """
    Trace the j-th characteristics through the anchors (x, t)

    Args:
        spec: Problem data
        j: Component index (0-based)
        x: Anchor positions in [0, 1]
        t: Anchor times (broadcast against x)
        n_steps: Uniform steps per unit xi (default ODE_STEPS)
        extra_nodes: Additional xi values that must be lattice nodes

    Returns:
        TraceBatch with one row per anchor
    """
    n_steps = get_settings().ODE_STEPS if n_steps is None else n_steps
    x_arr, t_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    x_arr = x_arr.ravel()
    t_arr = t_arr.ravel()
    extra = list(x_arr)
    if extra_nodes is not None:
        extra.extend(np.asarray(extra_nodes, dtype=float).ravel())
    lattice = ode_lattice(n_steps, extra)
    logger.debug(f"tracing {len(x_arr)} anchors of component {j} on {len(lattice)} nodes")
    return TraceBatch(spec, j, lattice, locate(lattice, x_arr), t_arr)


class CharacteristicTrace(BaseModel):
    """Sampled characteristic xi -> tau_j(xi, x, t) through one anchor"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    j: int
    x: float
    t: float
    xi_nodes: np.ndarray
    tau_values: np.ndarray
    slopes: np.ndarray
    h_ode: float


def trace(
    spec: ProblemSpec, j: int, x: float, t: float, n_steps: Optional[int] = None
) -> CharacteristicTrace:
    """Trace one characteristic over all of [0, 1]"""
    n_steps = get_settings().ODE_STEPS if n_steps is None else n_steps
    batch = trace_batch(spec, j, [x], [t], n_steps)
    tau_values = batch.tau[0].copy()
    tau_values[batch.anchor_index[0]] = t
    return CharacteristicTrace(
        j=j,
        x=float(x),
        t=float(t),
        xi_nodes=batch.lattice,
        tau_values=tau_values,
        slopes=batch.slopes[0],
        h_ode=1.0 / n_steps,
    )


def tau(trace_: CharacteristicTrace, xi: float) -> float:
    """tau at xi by cubic Hermite interpolation of the trace"""
    if xi == trace_.x:
        return trace_.t
    nodes = trace_.xi_nodes
    k = int(np.clip(np.searchsorted(nodes, xi, side="right") - 1, 0, len(nodes) - 2))
    h = nodes[k + 1] - nodes[k]
    s = (xi - nodes[k]) / h
    y0, y1 = trace_.tau_values[k], trace_.tau_values[k + 1]
    m0, m1 = trace_.slopes[k] * h, trace_.slopes[k + 1] * h
    return float(
        (1 + 2 * s) * (1 - s) ** 2 * y0
        + s * (1 - s) ** 2 * m0
        + s**2 * (3 - 2 * s) * y1
        + s**2 * (s - 1) * m1
    )
