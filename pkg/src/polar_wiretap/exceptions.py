"""Exception types raised by the package."""


class DegradednessError(ValueError):
    """The wiretap channel is less noisy than the main channel."""


class InfeasibleRateError(ValueError):
    """The requested rate does not fit in the available index budget."""


class CapacityError(RuntimeError):
    """A dense or exhaustive computation would exceed its configured limit."""
