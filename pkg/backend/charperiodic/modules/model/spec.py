from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from charperiodic.core.exceptions import ProblemSpecError
from charperiodic.modules.expr import CoefficientExpr, constant, parse

ExprLike = Union[CoefficientExpr, str, float, int]
Row = Tuple[CoefficientExpr, ...]
Matrix = Tuple[Row, ...]
OptionalMatrix = Tuple[Tuple[Optional[CoefficientExpr], ...], ...]

ZERO = constant(0.0)


def as_expr(value: ExprLike) -> CoefficientExpr:
    """Accept an expression, its text, or a number"""
    if isinstance(value, CoefficientExpr):
        return value
    if isinstance(value, str):
        return parse(value)
    return constant(float(value))


class ProblemSpec(BaseModel):
    """
    Hyperbolic problem data

    du_j/dt + a_j du_j/dx + sum_k b_jk u_k = f_j on (0,1) x R, 2pi-periodic in t,
    with reflection u_j(0,t) = sum_{k>=m} r_jk(t) u_k(0,t) for j < m and
    u_j(1,t) = sum_{k<m} r_jk(t) u_k(1,t) for j >= m.

    Indices are 0-based. Off-diagonal coupling may be given directly in b or in
    the factored form tilde_b (see assemble_b_from_tilde).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int
    m: int
    a: Row
    b: Matrix
    r: Matrix
    f: Row
    tilde_b: Optional[OptionalMatrix] = None

    @model_validator(mode="after")
    def _check_shapes(self) -> "ProblemSpec":
        if not (1 <= self.m < self.n):
            raise ProblemSpecError(f"need 1 <= m < n, got n={self.n}, m={self.m}")
        n = self.n
        if len(self.a) != n or len(self.f) != n:
            raise ProblemSpecError("a and f need n entries")
        for label, matrix in (("b", self.b), ("r", self.r), ("tilde_b", self.tilde_b)):
            if matrix is None:
                continue
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise ProblemSpecError(f"{label} must be an n x n table")
        return self

    @classmethod
    def build(
        cls,
        n: int,
        m: int,
        a: Sequence[ExprLike],
        b: Optional[Mapping[Tuple[int, int], ExprLike]] = None,
        r: Optional[Mapping[Tuple[int, int], ExprLike]] = None,
        f: Optional[Sequence[ExprLike]] = None,
        tilde_b: Optional[Mapping[Tuple[int, int], ExprLike]] = None,
    ) -> "ProblemSpec":
        """
        Build a spec from sparse tables; omitted entries are zero

        Args:
            n: Number of equations
            m: Size of the first block (boundary condition at x = 0)
            a: n wave speeds
            b: {(j, k): b_jk}
            r: {(j, k): r_jk}
            f: n right-hand sides (zero if omitted)
            tilde_b: {(j, k): tilde_b_jk} for j != k
        """
        b = b or {}
        r = r or {}
        f = f if f is not None else [0.0] * n
        tilde = None
        if tilde_b is not None:
            tilde = tuple(
                tuple(as_expr(tilde_b[(j, k)]) if (j, k) in tilde_b else None for k in range(n))
                for j in range(n)
            )
        return cls(
            n=n,
            m=m,
            a=tuple(as_expr(v) for v in a),
            b=_dense(b, n),
            r=_dense(r, n),
            f=tuple(as_expr(v) for v in f),
            tilde_b=tilde,
        )

    # Convenience accessors

    def boundary(self, j: int) -> float:
        """x_j: 0 for the first block, 1 for the second"""
        return 0.0 if j < self.m else 1.0

    def partners(self, j: int) -> range:
        """Components reflected into component j"""
        return range(self.m, self.n) if j < self.m else range(0, self.m)

    def coupling_pairs(self) -> Iterator[Tuple[int, int]]:
        """Off-diagonal (j, k) with b_jk not identically zero"""
        for j in range(self.n):
            for k in range(self.n):
                if j != k and not self.b[j][k].is_zero:
                    yield j, k

    @property
    def is_diagonal(self) -> bool:
        return next(self.coupling_pairs(), None) is None

    def fields(self) -> Dict[str, CoefficientExpr]:
        """All coefficient fields keyed by a readable label"""
        items: Dict[str, CoefficientExpr] = {}
        for j in range(self.n):
            items[f"a[{j}]"] = self.a[j]
            items[f"f[{j}]"] = self.f[j]
            for k in range(self.n):
                items[f"b[{j}][{k}]"] = self.b[j][k]
                items[f"r[{j}][{k}]"] = self.r[j][k]
                if self.tilde_b is not None and self.tilde_b[j][k] is not None:
                    items[f"tilde_b[{j}][{k}]"] = self.tilde_b[j][k]
        return items

    def with_f(self, f: Sequence[ExprLike]) -> "ProblemSpec":
        return self.model_copy(update={"f": tuple(as_expr(v) for v in f)})


def _dense(entries: Mapping[Tuple[int, int], ExprLike], n: int) -> Matrix:
    for j, k in entries:
        if not (0 <= j < n and 0 <= k < n):
            raise ProblemSpecError(f"index ({j}, {k}) outside 0..{n - 1}")
    return tuple(
        tuple(as_expr(entries[(j, k)]) if (j, k) in entries else ZERO for k in range(n))
        for j in range(n)
    )
