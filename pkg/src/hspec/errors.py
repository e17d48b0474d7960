"""Exception types shared across the package."""


class HspecError(Exception):
    """Base class for every package-specific error."""


class IndexOutOfRange(HspecError, ValueError):
    """A multi-index component or vertex label falls outside [1, n]."""


class ConflictingOrbitValues(HspecError, ValueError):
    """Two permutation-equivalent indices were given distinct values."""


class NonFiniteValue(HspecError, ValueError):
    """A tensor entry is NaN or infinite."""


class DimensionMismatch(HspecError, ValueError):
    """Vector length does not match the instance dimension."""


class EmptyIndexSet(HspecError, ValueError):
    """An operation requires a nonempty index set."""


class BadArity(HspecError, ValueError):
    """Prefix lengths exceed the tensor order."""


class RemovesAllVertices(HspecError, ValueError):
    """Vertex removal must leave at least one vertex."""


class UnknownEdge(HspecError, ValueError):
    """An edge argument is not an edge of the hypergraph."""


class OddOrderForBipartite(HspecError, ValueError):
    """Odd-bipartiteness is defined only for even uniformity."""


class NegativeEntry(HspecError, ValueError):
    """The nonnegative solver was handed a tensor with negative entries."""


class OddOrder(HspecError, ValueError):
    """The requested computation requires even order."""


class NoConvergence(HspecError, RuntimeError):
    """Iteration cap reached before the convergence criterion was met."""


class DimensionTooLarge(HspecError, ValueError):
    """Brute-force enumeration is restricted to small dimensions."""


class ParseError(HspecError, ValueError):
    """A tensor or hypergraph text file is malformed."""
