# Reflection profiles and the dissipativity constants
from charperiodic.modules.dissipativity.analyzer import (
    DissipativityAnalyzer,
    constants,
    r0_profile,
    r1_profile,
    sufficient_conditions,
)

__all__ = [
    "DissipativityAnalyzer",
    "constants",
    "r0_profile",
    "r1_profile",
    "sufficient_conditions",
]
