"""Exception types shared across the package."""


class CspTopoError(Exception):
    """Base class for all library errors."""


class ParseError(CspTopoError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(CspTopoError):
    """A dimension or face budget was exceeded."""


class PreconditionError(CspTopoError):
    """An operation was called outside its contract."""
