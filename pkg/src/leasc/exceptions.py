"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument is outside its documented domain."""


class ConfigError(ValueError):
    """Raised when a configuration object is internally inconsistent."""


class NumericError(RuntimeError):
    """Raised when an iterative computation diverges or fails to converge.

    Carries the iteration index at which the failure was detected, when
    available.
    """

    def __init__(self, message, iteration=None):
        if iteration is not None:
            message = "%s (iteration %d)" % (message, iteration)
        super().__init__(message)
        self.iteration = iteration


class DegenerateInputError(ValueError):
    """Raised when an input is structurally valid but degenerate (e.g. all-zero)."""


class FormatError(ValueError):
    """Raised on malformed matrix/label files. Carries the byte offset."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = "%s (byte offset %d)" % (message, offset)
        super().__init__(message)
        self.offset = offset
