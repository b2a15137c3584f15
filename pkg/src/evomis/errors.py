"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """A graph, partition or solution file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates an operator bug."""
