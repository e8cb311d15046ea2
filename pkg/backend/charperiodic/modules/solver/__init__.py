# Solvers for the integral system and the kernel probe
from charperiodic.modules.solver.direct import assemble_dense, kernel_probe, solve_direct
from charperiodic.modules.solver.iterative import invert_I_minus_C, solve_picard
from charperiodic.modules.solver.residual import classical_defect, residual

__all__ = [
    "assemble_dense",
    "classical_defect",
    "invert_I_minus_C",
    "kernel_probe",
    "residual",
    "solve_direct",
    "solve_picard",
]
