# Characteristic curves and the weights along them
from charperiodic.modules.characteristics.lattice import locate, ode_lattice, simpson_weights
from charperiodic.modules.characteristics.tracer import (
    CharacteristicTrace,
    TraceBatch,
    tau,
    trace,
    trace_batch,
)
from charperiodic.modules.characteristics.weights import (
    c_factor,
    d_factor,
    dtau_dt,
    dtau_dx,
    tau_at,
)

__all__ = [
    "CharacteristicTrace",
    "TraceBatch",
    "c_factor",
    "d_factor",
    "dtau_dt",
    "dtau_dx",
    "locate",
    "ode_lattice",
    "simpson_weights",
    "tau",
    "tau_at",
    "trace",
    "trace_batch",
]
