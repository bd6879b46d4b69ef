"""Shared exception types and the size-cap override hook."""

import os

ENV_MAX_VERTICES = "FOTRANS_MAX_VERTICES"


class FotransError(Exception):
    """Base class for all package errors."""


class FormulaSyntaxError(FotransError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnboundVariableError(FotransError):
    pass


class BudgetExceededError(FotransError):
    """Raised instead of silently truncating a search space."""

    def __init__(self, required, budget):
        super().__init__(f"search space {required} exceeds budget {budget}")
        self.required = required
        self.budget = budget


class SizeLimitError(FotransError):
    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} vertices exceeds cap {cap} "
                         f"(override with {ENV_MAX_VERTICES})")
        self.size = size
        self.cap = cap


class EmptyComparisonError(FotransError):
    """No comparable vertex pairs remain (empty interpretation output)."""


class NoStarColoringError(FotransError):
    pass


def vertex_cap(default):
    """Size cap for exact searches; overridable via FOTRANS_MAX_VERTICES."""
    value = os.environ.get(ENV_MAX_VERTICES)
    return default if value is None else int(value)
