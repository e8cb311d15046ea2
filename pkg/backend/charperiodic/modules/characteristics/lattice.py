from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from scipy.integrate import simpson

# Nodes closer than this are merged; anchors snap onto the merged node.
MERGE_TOL = 1e-12


def ode_lattice(n_steps: int, extra: Optional[Iterable[float]] = None) -> np.ndarray:
    """
    Integration nodes on [0, 1]

    Uniform nodes k/n_steps, with extra points (anchors, query points) inserted
    so that every one of them is a node.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    nodes = np.linspace(0.0, 1.0, n_steps + 1)
    if extra is not None:
        extra_arr = np.clip(np.asarray(list(extra), dtype=float).ravel(), 0.0, 1.0)
        nodes = np.union1d(nodes, extra_arr)
        keep = np.concatenate(([True], np.diff(nodes) > MERGE_TOL))
        nodes = nodes[keep]
        nodes[-1] = 1.0
    return nodes


def locate(lattice: np.ndarray, points) -> np.ndarray:
    """Index of the lattice node matching each point (points must be nodes)"""
    pts = np.clip(np.asarray(points, dtype=float), 0.0, 1.0)
    idx = np.clip(np.searchsorted(lattice, pts), 1, len(lattice) - 1)
    left = lattice[idx - 1]
    right = lattice[idx]
    idx = np.where(np.abs(pts - left) <= np.abs(right - pts), idx - 1, idx)
    if np.any(np.abs(lattice[idx] - pts) > 10 * MERGE_TOL):
        raise ValueError("point is not a lattice node")
    return idx


@lru_cache(maxsize=4096)
def _simpson_weights_cached(nodes: tuple) -> np.ndarray:
    x = np.asarray(nodes)
    size = len(x)
    if size == 1:
        return np.zeros(1)
    if size == 2:
        h = x[1] - x[0]
        return np.array([h / 2, h / 2])
    return simpson(np.eye(size), x=x, axis=-1)


def simpson_weights(nodes: np.ndarray) -> np.ndarray:
    """Composite Simpson weights on (possibly nonuniform) nodes"""
    weights = _simpson_weights_cached(tuple(np.asarray(nodes, dtype=float)))
    return weights.copy()
