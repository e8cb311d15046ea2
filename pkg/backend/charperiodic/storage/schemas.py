from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from charperiodic.storage.grid import PeriodicGridFunction

# ============= Validation =============


class ValidationCheck(BaseModel):
    """One standing-assumption check on one field"""

    name: str  # "nonvanishing a", "periodicity", "reflection sparsity", "finite"
    field: str  # e.g. "a[0]", "r[1][0]"
    passed: bool
    value: Optional[float] = None  # min |a|, max periodicity defect, ...
    x: Optional[float] = None  # worst sample, when meaningful
    t: Optional[float] = None
    message: str = ""


class ValidationReport(BaseModel):
    """Outcome of validate(); passed is true iff every check passed"""

    passed: bool
    checks: List[ValidationCheck] = Field(default_factory=list)
    samples_x: int
    samples_t: int

    @classmethod
    def from_checks(
        cls, checks: List[ValidationCheck], samples_x: int, samples_t: int
    ) -> "ValidationReport":
        return cls(
            passed=all(c.passed for c in checks),
            checks=checks,
            samples_x=samples_x,
            samples_t=samples_t,
        )

    def failures(self) -> List[ValidationCheck]:
        return [c for c in self.checks if not c.passed]


# ============= Dissipativity =============


class ArgmaxLocation(BaseModel):
    """Grid point where a profile attains its maximum"""

    j: int
    x: float
    t: float


class DissipativityReport(BaseModel):
    """Sup-norms of the reflection profiles and the two sufficient conditions"""

    S0: float
    T0: float
    S1: float
    T1: float
    argmax_S0: ArgmaxLocation
    argmax_T0: ArgmaxLocation
    argmax_S1: ArgmaxLocation
    argmax_T1: ArgmaxLocation
    cond_t8: bool  # S0 * T0 < 1
    cond_t81: bool  # S1 * T1 < 1
    grid_x: int  # x intervals
    grid_t: int  # t nodes


class SufficientConditions(BaseModel):
    """Pointwise quantities entering the coefficient-level sufficient conditions"""

    max_abs_r_first: float  # max |r_jk| for j < m, summed over partners
    max_abs_r_second: float  # same for j >= m
    min_b_over_a_first: float  # min of b_jj / a_j over j < m
    max_b_over_a_second: float  # max of b_jj / a_j over j >= m
    reflection_product_below_one: bool
    damping_signs_ok: bool  # b_jj/a_j >= 0 for j < m and <= 0 for j >= m
    holds: bool


# ============= Solver =============


class InversionResult(BaseModel):
    """Neumann iteration for (I - C) u = g"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    u: PeriodicGridFunction = Field(exclude=True)
    iterations: int
    converged: bool
    update_ratios: List[float] = Field(default_factory=list)


class SolveResult(BaseModel):
    """Result of solve_picard or solve_direct; the grid function is kept out of JSON"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    u: PeriodicGridFunction = Field(exclude=True)
    method: Literal["picard", "direct"]
    nx: int
    nt: int
    residual_sup: float
    outer_iters: int
    inner_iters_total: int
    converged: bool
    contraction_estimates: List[float] = Field(default_factory=list)
    amplification: Optional[float] = None  # ||u|| / ||F f||
    error_sup: Optional[float] = None  # against an exact solution, when known


class KernelProbe(BaseModel):
    """Singular values of the assembled I - C - D"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    singular_values: List[float]  # descending
    threshold: float
    estimated_dim: int  # count of sigma / sigma_max below threshold
    codim_estimate: int  # equals estimated_dim for a square system
    unknowns: int
    vectors: Optional[List[PeriodicGridFunction]] = Field(default=None, exclude=True)


class ClassicalDefect(BaseModel):
    """Finite-difference defect of the differential equations and boundary conditions"""

    pde_sup: float
    boundary_sup: float
