from dataclasses import dataclass
from typing import FrozenSet, Optional, Union

import numpy as np

from charperiodic.core.exceptions import ExpressionDomainError
from charperiodic.modules.expr.nodes import BinaryOp, Constant, Neg, Node

Operand = Union["CoefficientExpr", float, int]


@dataclass(frozen=True)
class CoefficientExpr:
    """
    Parsed arithmetic expression in the variables x and t

    Immutable and hashable; evaluation is reentrant. Arithmetic operators build
    new expressions, so coefficient fields can be combined without re-parsing.
    """

    root: Node

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Canonical fully parenthesized text; re-parses to an equivalent tree"""
        return self.root.to_text()

    @property
    def is_zero(self) -> bool:
        return isinstance(self.root, Constant) and self.root.value == 0.0

    def variables(self) -> FrozenSet[str]:
        return self.root.variables()

    def __call__(self, x, t) -> np.ndarray:
        return evaluate_array(self, x, t)

    # Arithmetic helpers

    def _combine(self, op: str, other: Operand, reverse: bool = False) -> "CoefficientExpr":
        other_node = _as_node(other)
        if reverse:
            return CoefficientExpr(BinaryOp(op, other_node, self.root))
        return CoefficientExpr(BinaryOp(op, self.root, other_node))

    def __add__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("+", other)

    def __radd__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("+", other, reverse=True)

    def __sub__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("-", other)

    def __rsub__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("-", other, reverse=True)

    def __mul__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("*", other)

    def __rmul__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("*", other, reverse=True)

    def __truediv__(self, other: Operand) -> "CoefficientExpr":
        return self._combine("/", other)

    def __neg__(self) -> "CoefficientExpr":
        return CoefficientExpr(Neg(self.root))


def _as_node(value: Operand) -> Node:
    if isinstance(value, CoefficientExpr):
        return value.root
    return Constant(float(value))


def constant(value: float) -> CoefficientExpr:
    """Expression of a constant value"""
    return CoefficientExpr(Constant(float(value)))


def evaluate_array(expr: CoefficientExpr, x, t) -> np.ndarray:
    """
    Evaluate an expression elementwise

    Args:
        expr: Parsed expression
        x: Scalar or array of x values
        t: Scalar or array of t values (broadcast against x)

    Returns:
        Float array with the broadcast shape of x and t

    Raises:
        ExpressionDomainError: Division by zero, log/sqrt outside the domain,
            or a non-finite value anywhere in the result
    """
    x_arr = np.asarray(x, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(x_arr.shape, t_arr.shape)
    with np.errstate(all="ignore"):
        result = expr.root.evaluate({"x": x_arr, "t": t_arr})
    result = np.broadcast_to(np.asarray(result, dtype=float), shape)
    if not np.all(np.isfinite(result)):
        raise ExpressionDomainError(f"non-finite value of {expr.to_text()}")
    return np.array(result)


def evaluate(expr: CoefficientExpr, x: float, t: float) -> float:
    """Evaluate an expression at one point"""
    return float(evaluate_array(expr, x, t))


def substitute(
    expr: CoefficientExpr,
    x: Optional[Operand] = None,
    t: Optional[Operand] = None,
) -> CoefficientExpr:
    """
    Replace the variables x and/or t by other expressions

    Example:
        shifted = substitute(u, t=parse("t") + 1e-6)   # u(x, t + 1e-6)
    """
    mapping = {}
    if x is not None:
        mapping["x"] = _as_node(x)
    if t is not None:
        mapping["t"] = _as_node(t)
    return CoefficientExpr(expr.root.replace(mapping))
