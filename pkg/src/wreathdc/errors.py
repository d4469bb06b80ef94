class WreathError(Exception):
    """Base class for all errors raised by this package."""


class InvalidElementError(WreathError, ValueError):
    pass


class CapExceededError(WreathError):
    """An enumeration would store more elements than the configured cap.

    ``radius`` is the radius that could not be completed and
    ``last_complete`` the largest radius that was fully enumerated.
    """

    def __init__(self, radius, last_complete, cap):
        self.radius = radius
        self.last_complete = last_complete
        self.cap = cap
        super().__init__(
            f"element cap {cap} exceeded at radius {radius} "
            f"(last completed radius: {last_complete})"
        )


class NotInBallError(WreathError, KeyError):
    pass


class PreconditionError(WreathError, ValueError):
    pass


class MalformedVariantError(WreathError, ValueError):
    pass


class DegenerateTowerError(WreathError, ValueError):
    pass


class BudgetExceededError(WreathError):
    def __init__(self, message, last_complete=None):
        self.last_complete = last_complete
        super().__init__(message)
