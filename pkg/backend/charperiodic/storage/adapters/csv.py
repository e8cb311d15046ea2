import io

import numpy as np

from charperiodic.core.exceptions import CharPeriodicError
from charperiodic.storage.adapters.base import GridAdapter
from charperiodic.storage.grid import PeriodicGridFunction

HEADER = "component,x,t,value"


class CsvGridAdapter(GridAdapter):
    """
    One row per node: component (0-based), x, t, value

    Rows are ordered by component, then x, then t; floats use 17 significant
    digits so the dump reads back bit-identically.
    """

    suffix = ".csv"

    def dumps(self, grid: PeriodicGridFunction) -> bytes:
        comps, nx1, nt = grid.shape
        xs, ts = grid.nodes()
        C, X, T = np.meshgrid(np.arange(comps), xs, ts, indexing="ij")
        table = np.column_stack([C.ravel(), X.ravel(), T.ravel(), grid.values.ravel()])
        buffer = io.StringIO()
        np.savetxt(buffer, table, fmt=["%d", "%.17g", "%.17g", "%.17g"], delimiter=",",
                   header=HEADER, comments="")
        return buffer.getvalue().encode("utf-8")

    def loads(self, data: bytes) -> PeriodicGridFunction:
        text = data.decode("utf-8")
        if not text.startswith(HEADER):
            raise CharPeriodicError("not a grid CSV dump (bad header)")
        table = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1, ndmin=2)
        comps = int(table[:, 0].max()) + 1
        nx = len(np.unique(table[:, 1])) - 1
        nt = len(np.unique(table[:, 2]))
        if comps * (nx + 1) * nt != len(table):
            raise CharPeriodicError("grid CSV dump is not a complete product grid")
        return PeriodicGridFunction(values=table[:, 3].reshape(comps, nx + 1, nt))
