"""
Expression tree nodes

Nodes are frozen dataclasses; evaluation works elementwise on numpy arrays and
raises ExpressionDomainError instead of producing inf/nan.
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Mapping

import numpy as np

from charperiodic.core.exceptions import ExpressionDomainError

VARIABLES: FrozenSet[str] = frozenset({"x", "t"})
NAMED_CONSTANTS: Dict[str, float] = {"pi": float(np.pi)}


def _checked_log(arg: np.ndarray) -> np.ndarray:
    if np.any(arg <= 0):
        raise ExpressionDomainError("log of a non-positive argument")
    return np.log(arg)


def _checked_sqrt(arg: np.ndarray) -> np.ndarray:
    if np.any(arg < 0):
        raise ExpressionDomainError("sqrt of a negative argument")
    return np.sqrt(arg)


FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": _checked_log,
    "abs": np.abs,
    "sqrt": _checked_sqrt,
}

Env = Mapping[str, np.ndarray]


class Node:
    """Base node"""

    def evaluate(self, env: Env) -> np.ndarray:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def replace(self, mapping: Mapping[str, "Node"]) -> "Node":
        return self

    def variables(self) -> FrozenSet[str]:
        return frozenset()


@dataclass(frozen=True)
class Constant(Node):
    value: float

    def evaluate(self, env: Env) -> np.ndarray:
        return np.asarray(self.value, dtype=float)

    def to_text(self) -> str:
        text = repr(float(self.value))
        return f"({text})" if self.value < 0 else text


@dataclass(frozen=True)
class NamedConstant(Node):
    name: str

    def evaluate(self, env: Env) -> np.ndarray:
        return np.asarray(NAMED_CONSTANTS[self.name], dtype=float)

    def to_text(self) -> str:
        return self.name


@dataclass(frozen=True)
class Variable(Node):
    name: str

    def evaluate(self, env: Env) -> np.ndarray:
        return env[self.name]

    def to_text(self) -> str:
        return self.name

    def replace(self, mapping: Mapping[str, Node]) -> Node:
        return mapping.get(self.name, self)

    def variables(self) -> FrozenSet[str]:
        return frozenset({self.name})


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def evaluate(self, env: Env) -> np.ndarray:
        return -self.operand.evaluate(env)

    def to_text(self) -> str:
        return f"(-{self.operand.to_text()})"

    def replace(self, mapping: Mapping[str, Node]) -> Node:
        return Neg(self.operand.replace(mapping))

    def variables(self) -> FrozenSet[str]:
        return self.operand.variables()


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node

    def evaluate(self, env: Env) -> np.ndarray:
        left = self.left.evaluate(env)
        right = self.right.evaluate(env)
        if self.op == "+":
            return left + right
        if self.op == "-":
            return left - right
        if self.op == "*":
            return left * right
        if self.op == "/":
            if np.any(right == 0):
                raise ExpressionDomainError("division by zero")
            return left / right
        if self.op == "^":
            result = np.power(left, right)
            if not np.all(np.isfinite(result)):
                raise ExpressionDomainError(f"non-finite power in {self.to_text()}")
            return result
        raise ValueError(f"Unsupported operator: {self.op}")

    def to_text(self) -> str:
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"

    def replace(self, mapping: Mapping[str, Node]) -> Node:
        return BinaryOp(self.op, self.left.replace(mapping), self.right.replace(mapping))

    def variables(self) -> FrozenSet[str]:
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node

    def evaluate(self, env: Env) -> np.ndarray:
        return FUNCTIONS[self.func](self.arg.evaluate(env))

    def to_text(self) -> str:
        return f"{self.func}({self.arg.to_text()})"

    def replace(self, mapping: Mapping[str, Node]) -> Node:
        return Call(self.func, self.arg.replace(mapping))

    def variables(self) -> FrozenSet[str]:
        return self.arg.variables()
