class CharPeriodicError(Exception):
    """Base class for all library errors"""


class ExpressionError(CharPeriodicError, ValueError):
    """Malformed coefficient expression"""


class ExpressionSyntaxError(ExpressionError):
    """Syntax error at a byte offset of the source text"""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        self.message = message
        super().__init__(f"syntax error at offset {offset}: {message}")


class UnknownIdentifierError(ExpressionError):
    """Identifier outside x, t, pi and the function whitelist"""

    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier '{name}' at offset {offset}")


class ExpressionDomainError(CharPeriodicError, ArithmeticError):
    """Expression evaluated outside its domain or to a non-finite value"""


class ProblemSpecError(CharPeriodicError):
    """Inconsistent problem data"""


class CharacteristicBlowUpError(CharPeriodicError):
    """|a_j| fell below the admissible floor along a characteristic"""


class AssemblyCapError(CharPeriodicError):
    """Dense assembly requested beyond the configured unknown count"""


class SingularSystemError(CharPeriodicError):
    """Dense system is numerically singular"""


class BoundaryConditionError(CharPeriodicError):
    """Exact solution violates the reflection boundary conditions"""


class ProblemFileError(CharPeriodicError):
    """Problem file cannot be read or is inconsistent"""
