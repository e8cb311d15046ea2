# Coefficient expressions in x and t
from charperiodic.modules.expr.expression import (
    CoefficientExpr,
    constant,
    evaluate,
    evaluate_array,
    substitute,
)
from charperiodic.modules.expr.parser import CoefficientParser, parse

__all__ = [
    "CoefficientExpr",
    "CoefficientParser",
    "constant",
    "evaluate",
    "evaluate_array",
    "parse",
    "substitute",
]
