"""Exception hierarchy shared by all stepwell modules."""


class StepWellError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(StepWellError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegeneratePointError(InvalidInputError):
    """The energy sits exactly on the step height, where both branches degenerate."""


class UnsupportedConfigurationError(StepWellError):
    """The requested closed form does not exist for this well geometry."""


class BracketError(StepWellError):
    """The spectral function has no sign change on a separator interval."""

    def __init__(self, message, interval):
        super().__init__(f"{message} (interval {interval[0]!r}..{interval[1]!r})")
        self.interval = interval


class ConvergenceError(StepWellError):
    """Adaptive quadrature ran out of panels before meeting its tolerance."""

    def __init__(self, message, estimate, error_bound):
        super().__init__(f"{message}: estimate={estimate!r}, error bound={error_bound!r}")
        self.estimate = estimate
        self.error_bound = error_bound


class RangeViolationError(StepWellError):
    """A computed action value escaped its separator interval."""
