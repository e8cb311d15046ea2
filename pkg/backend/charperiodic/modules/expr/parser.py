from typing import List

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from charperiodic.core.exceptions import (
    ExpressionError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)
from charperiodic.modules.expr.expression import CoefficientExpr
from charperiodic.modules.expr.nodes import (
    FUNCTIONS,
    NAMED_CONSTANTS,
    VARIABLES,
    BinaryOp,
    Call,
    Constant,
    NamedConstant,
    Neg,
    Node,
    Variable,
)

# ^ binds tighter than unary minus, which binds tighter than * and /.
# ^ is right-associative: its right operand re-enters at the unary level.
GRAMMAR = r"""
?start: sum

?sum: product
    | sum "+" product     -> add
    | sum "-" product     -> sub

?product: unary
    | product "*" unary   -> mul
    | product "/" unary   -> div

?unary: power
    | "-" unary           -> neg

?power: atom
    | atom "^" unary      -> pow

?atom: NUMBER             -> number
    | NAME                -> name
    | NAME "(" sum ")"    -> call
    | "(" sum ")"

NAME: /[A-Za-z_][A-Za-z_0-9]*/
NUMBER: /(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?/

%import common.WS
%ignore WS
"""


class ExprBuilder(Transformer):
    """Turn the lark parse tree into expression nodes, rejecting unknown names"""

    def __init__(self, source: str):
        super().__init__()
        self.source = source

    def _offset(self, token: Token) -> int:
        return len(self.source[: token.start_pos].encode("utf-8"))

    def number(self, items: List[Token]) -> Node:
        return Constant(float(items[0]))

    def name(self, items: List[Token]) -> Node:
        token = items[0]
        ident = str(token)
        if ident in VARIABLES:
            return Variable(ident)
        if ident in NAMED_CONSTANTS:
            return NamedConstant(ident)
        raise UnknownIdentifierError(ident, self._offset(token))

    def call(self, items: List) -> Node:
        token, arg = items
        func = str(token)
        if func not in FUNCTIONS:
            raise UnknownIdentifierError(func, self._offset(token))
        return Call(func, arg)

    def neg(self, items: List[Node]) -> Node:
        return Neg(items[0])

    def add(self, items: List[Node]) -> Node:
        return BinaryOp("+", items[0], items[1])

    def sub(self, items: List[Node]) -> Node:
        return BinaryOp("-", items[0], items[1])

    def mul(self, items: List[Node]) -> Node:
        return BinaryOp("*", items[0], items[1])

    def div(self, items: List[Node]) -> Node:
        return BinaryOp("/", items[0], items[1])

    def pow(self, items: List[Node]) -> Node:
        return BinaryOp("^", items[0], items[1])


class CoefficientParser:
    """
    Parser for coefficient expressions

    Grammar: numbers, x, t, pi, unary minus, + - * / ^ and the one-argument
    functions sin, cos, exp, log, abs, sqrt. No implicit multiplication.
    """

    def __init__(self):
        self._lark = Lark(GRAMMAR, parser="lalr", maybe_placeholders=False)

    def parse(self, source: str) -> CoefficientExpr:
        """
        Parse expression text

        Args:
            source: Expression text, e.g. "-1 + 0.1*sin(t)"

        Returns:
            Parsed expression

        Raises:
            ExpressionSyntaxError: Malformed input (offset in bytes)
            UnknownIdentifierError: Identifier outside the whitelist
        """
        if not source or not source.strip():
            raise ExpressionSyntaxError(0, "empty expression")

        try:
            tree = self._lark.parse(source)
        except UnexpectedInput as e:
            raise ExpressionSyntaxError(self._error_offset(source, e), self._describe(e)) from None

        try:
            node = ExprBuilder(source).transform(tree)
        except VisitError as e:
            if isinstance(e.orig_exc, ExpressionError):
                raise e.orig_exc from None
            raise
        return CoefficientExpr(node)

    @staticmethod
    def _error_offset(source: str, error: UnexpectedInput) -> int:
        pos = getattr(error, "pos_in_stream", None)
        if pos is None or pos < 0:
            pos = len(source)
        pos = min(max(pos, 0), len(source) - 1)
        return len(source[:pos].encode("utf-8"))

    @staticmethod
    def _describe(error: UnexpectedInput) -> str:
        token = getattr(error, "token", None)
        if token is not None and getattr(token, "type", None) == "$END":
            return "unexpected end of input"
        if token is not None:
            return f"unexpected token {str(token)!r}"
        char = getattr(error, "char", None)
        if char is not None:
            return f"unexpected character {char!r}"
        return "unexpected end of input"


_parser = CoefficientParser()


def parse(source: str) -> CoefficientExpr:
    """Parse with the shared module-level parser"""
    return _parser.parse(source)
