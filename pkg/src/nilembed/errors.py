"""Exception hierarchy shared by all modules."""


class NilembedError(Exception):
    """Base class for every error raised by this package."""


class PresentationSyntaxError(NilembedError, ValueError):
    """A presentation file line could not be parsed."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class RelationIndexError(NilembedError, IndexError):
    """A relation uses generator indices outside 1 <= i < j < k <= n."""


class WeightError(NilembedError, ValueError):
    """Weights are missing or violate nu(a_k) >= nu(a_i) + nu(a_j)."""


class CentralityError(NilembedError, ValueError):
    """Generators identified in a central product are not central."""


class NonTerminating(NilembedError, RuntimeError):
    """A rewriting or closure loop exceeded its step budget."""


class InterpolationRankError(NilembedError, ArithmeticError):
    """The interpolation system stayed singular after all grid growths."""


class VerificationError(NilembedError, AssertionError):
    """An interpolated polynomial disagrees with the collection oracle."""


class NonTriangular(NilembedError, AssertionError):
    """An extracted matrix is not upper unitriangular in the chosen order."""


class NonIntegralEntry(NilembedError, ArithmeticError):
    """An extracted matrix has a non-integer entry."""


class BudgetExceeded(NilembedError, RuntimeError):
    """A computation would exceed a configured size budget."""
