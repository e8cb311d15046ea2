"""
Closed-form quantities along characteristics

Each function accepts scalars or arrays for (xi, x, t), broadcasts them, traces
one characteristic per (x, t) with xi inserted as a lattice node, and returns a
float for scalar input or an array of the broadcast shape.
"""

from typing import Optional

import numpy as np

from charperiodic.modules.characteristics.lattice import locate
from charperiodic.modules.characteristics.tracer import trace_batch
from charperiodic.modules.model import ProblemSpec


def _batch(spec: ProblemSpec, j: int, xi, x, t, n_steps: Optional[int]):
    xi_arr, x_arr, t_arr = np.broadcast_arrays(
        np.asarray(xi, dtype=float), np.asarray(x, dtype=float), np.asarray(t, dtype=float)
    )
    shape = xi_arr.shape
    batch = trace_batch(spec, j, x_arr.ravel(), t_arr.ravel(), n_steps, extra_nodes=xi_arr.ravel())
    q = locate(batch.lattice, xi_arr.ravel())
    return batch, q, shape


def _shape(values: np.ndarray, shape):
    values = values.reshape(shape)
    return float(values) if values.ndim == 0 else values


def tau_at(spec: ProblemSpec, j: int, xi, x, t, n_steps: Optional[int] = None):
    """tau_j(xi, x, t), read off the trace node at xi"""
    batch, q, shape = _batch(spec, j, xi, x, t, n_steps)
    return _shape(batch.tau[np.arange(len(q)), q], shape)


def dtau_dx(spec: ProblemSpec, j: int, xi, x, t, n_steps: Optional[int] = None):
    """
    Derivative of tau_j(xi, x, t) in x

    -(1 / a_j(x, t)) * exp of the integral from xi to x of d_t a_j / a_j^2
    along the characteristic.
    """
    batch, q, shape = _batch(spec, j, xi, x, t, n_steps)
    return _shape(batch.dtau_dx(q), shape)


def dtau_dt(spec: ProblemSpec, j: int, xi, x, t, n_steps: Optional[int] = None):
    """Derivative of tau_j(xi, x, t) in t: exp of the integral from xi to x of d_t a_j / a_j^2"""
    batch, q, shape = _batch(spec, j, xi, x, t, n_steps)
    return _shape(batch.dtau_dt(q), shape)


def c_factor(spec: ProblemSpec, j: int, xi, x, t, n_steps: Optional[int] = None):
    """c_j(xi, x, t) = exp of the integral from x to xi of b_jj / a_j along the characteristic"""
    batch, q, shape = _batch(spec, j, xi, x, t, n_steps)
    return _shape(batch.c_factor(q), shape)


def d_factor(spec: ProblemSpec, j: int, xi, x, t, n_steps: Optional[int] = None):
    """d_j(xi, x, t) = c_j(xi, x, t) / a_j(xi, tau_j(xi, x, t))"""
    batch, q, shape = _batch(spec, j, xi, x, t, n_steps)
    return _shape(batch.d_factor(q), shape)


