"""Exception types shared across the package."""


class Graph6Error(ValueError):
    """Malformed graph6 input (bad length header, stray bits, byte out of range)."""


class BudgetExceededError(RuntimeError):
    """A backtracking search ran past its node or time budget."""


class ToleranceError(RuntimeError):
    """A floating-point step disagreed with an exact cross-check."""


class DecompositionError(RuntimeError):
    """Wedderburn decomposition could not be certified."""
