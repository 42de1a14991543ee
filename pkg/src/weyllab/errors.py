"""Shared exception types."""


class ResourceBudgetError(RuntimeError):
    """A computation would exceed its sample/memory budget.

    Raised up front with an estimate of the required resources; work is
    never silently truncated.
    """


class ConsistencyError(RuntimeError):
    """Two independent internal evaluations of the same quantity disagree."""


class ConfigError(ValueError):
    """An experiment configuration violates a named precondition."""
