"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An operation was called with arguments violating its preconditions."""


class NumericalFailureError(RuntimeError):
    """A numerical procedure produced non-finite or unusable results.

    Carries optional context (e.g. the Runge-Kutta stage index) in ``context``.
    """

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context
