from typing import Tuple

import numpy as np

TWO_PI = 2.0 * np.pi


def periodic_cubic_stencil(t, nt: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Four-point Lagrange interpolation on the periodic t-grid

    Args:
        t: Query times, any shape
        nt: Number of t nodes (>= 4)

    Returns:
        (indices, weights), each of shape t.shape + (4,), for the nodes
        l-1, l, l+1, l+2 (mod nt) around the query
    """
    s = np.mod(np.asarray(t, dtype=float), TWO_PI) * (nt / TWO_PI)
    base = np.floor(s)
    f = s - base
    base = base.astype(np.int64)
    offsets = np.arange(-1, 3)
    indices = np.mod(base[..., None] + offsets, nt)
    weights = np.stack(
        [
            -f * (f - 1) * (f - 2) / 6,
            (f + 1) * (f - 1) * (f - 2) / 2,
            -(f + 1) * f * (f - 2) / 2,
            (f + 1) * f * (f - 1) / 6,
        ],
        axis=-1,
    )
    return indices, weights
