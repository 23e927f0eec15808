class DomainError(ValueError):
    """Input outside the domain where a formula is valid (branch cut, pole, bad parameter)."""


class NotFound(RuntimeError):
    """A search finished without locating what it was asked for."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace if trace is not None else []


class NumericError(RuntimeError):
    """A numerical procedure failed to reach its tolerance."""
