"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(ValueError):
    """A scenario or selection request cannot be satisfied as specified."""


class ConditioningError(ArithmeticError):
    """A computation lost too much precision to be trusted."""
