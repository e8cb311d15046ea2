import struct

import numpy as np

from charperiodic.core.exceptions import CharPeriodicError
from charperiodic.storage.adapters.base import GridAdapter
from charperiodic.storage.grid import PeriodicGridFunction

MAGIC = b"PGF1"
# magic, components, nx (intervals), nt; little-endian
HEADER = struct.Struct("<4sIII")


class BinaryGridAdapter(GridAdapter):
    """Header followed by the raw little-endian float64 values in flattening order"""

    suffix = ".pgf"

    def dumps(self, grid: PeriodicGridFunction) -> bytes:
        comps, _, nt = grid.shape
        header = HEADER.pack(MAGIC, comps, grid.nx, nt)
        return header + np.ascontiguousarray(grid.values, dtype="<f8").tobytes()

    def loads(self, data: bytes) -> PeriodicGridFunction:
        if len(data) < HEADER.size:
            raise CharPeriodicError("truncated grid dump")
        magic, comps, nx, nt = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise CharPeriodicError(f"bad magic {magic!r}, expected {MAGIC!r}")
        expected = HEADER.size + 8 * comps * (nx + 1) * nt
        if len(data) != expected:
            raise CharPeriodicError(f"grid dump has {len(data)} bytes, expected {expected}")
        values = np.frombuffer(data, dtype="<f8", offset=HEADER.size)
        return PeriodicGridFunction(values=values.reshape(comps, nx + 1, nt).astype(float))
