"""Domain error types shared across the package.

The CLI maps every :class:`DomainError` to exit code 1 and reports the
error's :attr:`name`, so error names here are part of the tool's contract.
"""


class DomainError(Exception):
    """Base class for failures that are part of an operation's contract."""

    error_name = None  # override when the reported name differs from the class

    @property
    def name(self):
        return self.error_name or type(self).__name__


class ParseError(DomainError):
    """Malformed input text; reported as "SyntaxError" with a byte offset."""

    error_name = "SyntaxError"

    def __init__(self, message, offset, expected=frozenset()):
        super().__init__(message)
        self.offset = offset
        self.expected = frozenset(expected)


class UnboundVariable(DomainError):
    pass


class InvalidSchemaVariables(DomainError):
    pass


class NotPrenex(DomainError):
    pass


class BudgetExceeded(DomainError):
    """A finite search was inconclusive; never stands for a truth value."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class DivisionByZero(DomainError):
    pass


class NotACode(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class ZeroElement(DomainError):
    pass


class IllFormed(DomainError):
    pass


class ArityMismatch(DomainError):
    pass


class UnknownName(DomainError):
    pass


class NotCoprime(DomainError):
    pass


class BadSubset(DomainError):
    pass


class EmptySet(DomainError):
    pass


class SearchSpaceTooLarge(DomainError):
    def __init__(self, required, cap):
        super().__init__(
            f"search needs {required} colorings but the enumeration cap is {cap}"
        )
        self.required = required
        self.cap = cap


class ShapeMismatch(DomainError):
    pass


class InvalidPartitionFile(DomainError):
    pass
