"""Exception hierarchy shared by every kneserlab module."""


class KneserLabError(Exception):
    """Base class for all errors raised by kneserlab."""


class InvalidParameter(KneserLabError, ValueError):
    pass


class EmptySetMember(KneserLabError, ValueError):
    pass


class SizeMismatch(KneserLabError, ValueError):
    pass


class DimensionMismatch(KneserLabError, ValueError):
    pass


class ImproperColoring(KneserLabError, ValueError):
    pass


class OverlappingColorSets(KneserLabError, ValueError):
    pass


class PreconditionViolated(KneserLabError, ValueError):
    pass


class Infeasible(KneserLabError):
    """No proper coloring exists within the requested palette."""


class NoWitness(KneserLabError):
    pass


class VerificationFailed(KneserLabError, AssertionError):
    """A constructed object failed its own post-check. Indicates a bug."""


class BudgetExhausted(KneserLabError):
    """A search ran out of its node or wall-clock allowance.

    ``lower`` and ``upper`` carry the best known bounds when the search is an
    optimisation; either may be ``None``.
    """

    def __init__(self, message="budget exhausted", lower=None, upper=None, nodes=0):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.nodes = nodes
