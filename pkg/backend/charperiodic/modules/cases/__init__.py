# Built-in problems and manufactured solutions
from charperiodic.modules.cases.builder import (
    CaseBundle,
    boundary_shift,
    is_commensurate,
    manufactured,
    remark1_alpha_for_shift,
    remark1_problem,
    remark2_problem,
)

__all__ = [
    "CaseBundle",
    "boundary_shift",
    "is_commensurate",
    "manufactured",
    "remark1_alpha_for_shift",
    "remark1_problem",
    "remark2_problem",
]
