"""Exception types raised across the package."""


class InvalidInputError(ValueError):
    """An argument violates the documented preconditions."""


class TruncationError(InvalidInputError):
    """A frequency grid is too narrow for the spectrum sampled on it."""


class UndersampledError(InvalidInputError):
    """A delay grid cannot resolve the fringe carrier it is asked to sample."""
