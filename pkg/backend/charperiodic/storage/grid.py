"""
Periodic grid functions

Values live on x_i = i/nx (i = 0..nx) and t_l = 2*pi*l/nt (l = 0..nt-1), so
the x-grid has nx intervals and the t-grid nt nodes of one period. Between
nodes a grid function is bilinear: clamped-linear in x, periodic in t.
"""

from typing import Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from charperiodic.modules.expr import CoefficientExpr, evaluate_array

TWO_PI = 2.0 * np.pi


def grid_nodes(nx: int, nt: int) -> Tuple[np.ndarray, np.ndarray]:
    """x nodes (nx + 1) and t nodes (nt) of the product grid"""
    return np.linspace(0.0, 1.0, nx + 1), TWO_PI * np.arange(nt) / nt


def bilinear_stencil(x, t, nx: int, nt: int):
    """
    Corner indices and weights of the bilinear interpolant

    Returns:
        (ix, it, wx, wt) where the value at (x, t) is
        sum over a, b in {0, 1} of wx[a] * wt[b] * g[ix + a, (it + b) % nt]
    """
    xs = np.clip(np.asarray(x, dtype=float), 0.0, 1.0) * nx
    ix = np.minimum(np.floor(xs).astype(np.int64), nx - 1)
    fx = xs - ix
    ts = np.mod(np.asarray(t, dtype=float), TWO_PI) * (nt / TWO_PI)
    floor_t = np.floor(ts)
    ft = ts - floor_t
    it = floor_t.astype(np.int64) % nt
    return ix, it, (1.0 - fx, fx), (1.0 - ft, ft)


class PeriodicGridFunction(BaseModel):
    """
    Grid function with components on the product grid

    values has shape (components, nx + 1, nt). Flattening is C-ordered:
    index = component * (nx + 1) * nt + i * nt + l.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, value):
        array = np.array(value, dtype=float)
        if array.ndim != 3 or array.shape[1] < 2 or array.shape[2] < 1:
            raise ValueError("values must have shape (components, nx + 1, nt)")
        return array

    # Construction

    @classmethod
    def zeros(cls, components: int, nx: int, nt: int) -> "PeriodicGridFunction":
        return cls(values=np.zeros((components, nx + 1, nt)))

    @classmethod
    def from_flat(
        cls, vector: np.ndarray, components: int, nx: int, nt: int
    ) -> "PeriodicGridFunction":
        return cls(values=np.asarray(vector, dtype=float).reshape(components, nx + 1, nt))

    @classmethod
    def from_expressions(
        cls, exprs: Sequence[CoefficientExpr], nx: int, nt: int
    ) -> "PeriodicGridFunction":
        """Sample one expression per component on the grid"""
        xs, ts = grid_nodes(nx, nt)
        values = np.stack([evaluate_array(e, xs[:, None], ts[None, :]) for e in exprs])
        return cls(values=values)

    # Shape

    @property
    def components(self) -> int:
        return self.values.shape[0]

    @property
    def nx(self) -> int:
        return self.values.shape[1] - 1

    @property
    def nt(self) -> int:
        return self.values.shape[2]

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.values.shape

    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        return grid_nodes(self.nx, self.nt)

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def select(self, start: int, stop: int) -> "PeriodicGridFunction":
        """Components start..stop-1"""
        return PeriodicGridFunction(values=self.values[start:stop])

    @classmethod
    def stack(cls, first: "PeriodicGridFunction", second: "PeriodicGridFunction"):
        return cls(values=np.concatenate([first.values, second.values], axis=0))

    # Evaluation

    def interp(self, comp: int, x, t) -> Union[float, np.ndarray]:
        """Bilinear value of one component at arbitrary (x, t)"""
        ix, it, wx, wt = bilinear_stencil(x, t, self.nx, self.nt)
        g = self.values[comp]
        it1 = (it + 1) % self.nt
        value = (
            wx[0] * (wt[0] * g[ix, it] + wt[1] * g[ix, it1])
            + wx[1] * (wt[0] * g[ix + 1, it] + wt[1] * g[ix + 1, it1])
        )
        return float(value) if np.ndim(value) == 0 else value

    def sup_norm(self) -> float:
        """Max of |value| over components and nodes"""
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    # Arithmetic

    def _check(self, other: "PeriodicGridFunction") -> None:
        if self.shape != other.shape:
            raise ValueError(f"grid shapes differ: {self.shape} vs {other.shape}")

    def __add__(self, other: "PeriodicGridFunction") -> "PeriodicGridFunction":
        self._check(other)
        return PeriodicGridFunction(values=self.values + other.values)

    def __sub__(self, other: "PeriodicGridFunction") -> "PeriodicGridFunction":
        self._check(other)
        return PeriodicGridFunction(values=self.values - other.values)

    def __mul__(self, scalar: float) -> "PeriodicGridFunction":
        return PeriodicGridFunction(values=self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "PeriodicGridFunction":
        return PeriodicGridFunction(values=-self.values)


def interp(g: PeriodicGridFunction, comp: int, x, t):
    return g.interp(comp, x, t)


def sup_norm(g: PeriodicGridFunction) -> float:
    return g.sup_norm()
