"""Exception types shared by every module."""


class InvalidParameterError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class ResourceLimitError(RuntimeError):
    """Raised when an instance exceeds a configured size budget.

    ``budget_name`` is the CLI flag that controls the limit, so callers can
    tell the user which knob to turn.
    """

    def __init__(self, message, budget_name=None):
        super().__init__(message)
        self.budget_name = budget_name
