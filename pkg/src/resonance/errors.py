"""Exception taxonomy shared by the library and the CLI exit codes."""


class ValidationError(ValueError):
    """Bad input: a precondition or domain restriction was violated (CLI exit 2)."""


class WindowError(ValidationError):
    """A resonator spec's default prime window contains no prime.

    Carries the computed default window so callers can report what an
    explicit override needs to replace.
    """

    def __init__(self, message, window):
        super().__init__(message)
        self.window = window


class PrecisionError(ValidationError):
    """The requested evaluation cannot meet its accuracy contract in doubles."""


class ResourceError(RuntimeError):
    """A size guard tripped: the computation would exceed its budget (CLI exit 3)."""


class IterationError(RuntimeError):
    """An iterative solver failed to converge within its iteration cap (CLI exit 3)."""

    def __init__(self, message, last_value=None):
        super().__init__(message)
        self.last_value = last_value
