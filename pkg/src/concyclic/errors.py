"""Exception types shared across the package.

Plain invalid input raises ValueError everywhere; the classes below mark
the two failure modes that deserve distinct process exit codes.
"""


class SearchBudgetExceeded(RuntimeError):
    """A bounded search (e.g. the admissible-prime search) ran out of budget."""

    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


class ConsistencyError(RuntimeError):
    """An internal invariant failed.  Carries whatever evidence was at hand."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class TheoremViolationError(ConsistencyError):
    """A verified construction disagreed with the counting law it certifies.

    This should never fire; if it does, the payload is the interesting part.
    """
