# Grid functions and the discrete operators K, L, C, D, F
from charperiodic.modules.operators.assembly import DiscreteOperators
from charperiodic.modules.operators.cache import OperatorCache, get_cache, get_operators
from charperiodic.modules.operators.ops import apply_C, apply_D, apply_F, apply_K, apply_L
from charperiodic.storage.grid import PeriodicGridFunction, interp, sup_norm

__all__ = [
    "DiscreteOperators",
    "OperatorCache",
    "PeriodicGridFunction",
    "apply_C",
    "apply_D",
    "apply_F",
    "apply_K",
    "apply_L",
    "get_cache",
    "get_operators",
    "interp",
    "sup_norm",
]
