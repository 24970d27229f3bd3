"""Exception types raised across the toolkit."""


class PipeleakError(ValueError):
    """Base class for all toolkit errors."""


class RejectedInput(PipeleakError):
    """Input violates a documented invariant or yields a non-finite result."""


class RangeError(PipeleakError):
    """A requested window lies outside the span of the data."""


class InfeasibleTimeDifference(PipeleakError):
    """Arrival-time difference cannot be produced by any point on the line."""
