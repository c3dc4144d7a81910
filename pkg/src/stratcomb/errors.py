"""Exception types shared across the package."""


class SpecError(ValueError):
    """A group specification (or its text file) is malformed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InternalConsistencyError(RuntimeError):
    """A mathematically guaranteed property failed; indicates a bug."""


class InsufficientPrecision(ArithmeticError):
    """The truncation order N is too small for the requested invariant."""


class NotInKChi(ValueError):
    pass


class CrossCheckError(InternalConsistencyError):
    """Two independent computations of the same object disagree."""
