"""Exceptions shared across packages."""


class InstanceError(ValueError):
    """Raised when an instance file cannot be parsed or fails validation."""

    def __init__(self, message: str, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class UsageModelMismatch(ValueError):
    """Raised when a policy or solver needs a usage model the instance does not have."""


class PolicyContractError(RuntimeError):
    """Raised when a policy picks a resource that is unavailable or not a neighbor."""


class SimplexError(RuntimeError):
    """Raised when the simplex method fails to converge or the LP is unbounded."""

    def __init__(self, message: str, iterations: int = 0, objective: float = float("nan")):
        super().__init__(f"{message} (iterations={iterations}, objective={objective})")
        self.iterations = iterations
        self.objective = objective
