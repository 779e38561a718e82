"""Exception hierarchy shared by all modules."""


class OpIdentError(Exception):
    pass


class NotDivisible(OpIdentError, ArithmeticError):
    pass


class ZeroAtPole(OpIdentError, ZeroDivisionError):
    pass


class OutOfRange(OpIdentError, ValueError):
    pass


class PartsMismatch(OpIdentError, ValueError):
    pass


class InvalidContext(OpIdentError, ValueError):
    pass


class ContextMismatch(OpIdentError, ValueError):
    pass


class UnsupportedFamily(OpIdentError, ValueError):
    pass


class NotInvariant(OpIdentError, ValueError):
    """An operator image left the polynomial module it was applied on."""

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class ExprSyntaxError(OpIdentError, SyntaxError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownGenerator(OpIdentError, ValueError):
    pass


class IndexOutOfRange(OpIdentError, ValueError):
    pass
