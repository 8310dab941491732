"""Exception types shared across the package."""


class HambError(Exception):
    """Base class for all package-specific errors."""


class GraphSizeError(HambError):
    """Raised when an input exceeds a vertex cap or an algorithm's size limit."""


class ParseError(HambError):
    """Malformed graph input, with optional line/column position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(message)

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        if self.col is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, col {self.col}: {self.message}"


class PolicyError(HambError):
    """Invalid row-order policy: bad table shape/entries or a graph mismatch."""
