"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid parameters, ranges or scenario configuration."""

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class StateError(ValueError):
    """A quantum-state object violates its invariants."""


class CapacityError(RuntimeError):
    """Requested exact computation exceeds the memory/time guard."""


class NumericError(ArithmeticError):
    """An iterative numerical routine failed to converge."""

    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
