"""Exception types shared across the package."""


class TropschError(Exception):
    """Base class for all errors raised by tropsch."""


class CapExceeded(TropschError):
    """A size cap (monomials, circuits, exhaustive scans) would be exceeded."""


class NoMatroidError(TropschError):
    """The graded piece is the whole space, so L_d = 0 has no valuated matroid."""


class ParseError(TropschError, ValueError):
    """Malformed text input; carries a line/column position when known."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None and col is not None:
            where = f" (line {line}, column {col})"
        elif col is not None:
            where = f" (column {col})"
        super().__init__(message + where)
