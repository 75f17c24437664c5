"""Exception hierarchy shared by all solver modules."""


class BcpError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolation(BcpError):
    """An operation was called with arguments outside its contract."""


class InputError(BcpError):
    """User-supplied data (files, CLI arguments) is invalid."""


class ParseError(InputError):
    """Instance or partition text is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(BcpError):
    """An enumeration or solve exceeded its configured budget."""


class InternalError(BcpError):
    """A solver invariant broke; indicates a bug, not bad input."""
