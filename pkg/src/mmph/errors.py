"""Exception hierarchy shared by all modules."""


class MmphError(ValueError):
    """Base class for every error raised by this package."""


class ParseError(MmphError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class UnknownCharacter(ParseError):
    pass


class DanglingPlus(ParseError):
    pass


class DuplicateVertexInEdge(ParseError):
    pass


class MissingTerminator(ParseError):
    pass


class EmptyEdge(ParseError):
    pass


class ResultEmpty(MmphError):
    """An edit removed every hyperedge."""


class EdgeTooLarge(MmphError):
    pass


class NotABijection(MmphError):
    pass


class StrictCleanupError(MmphError):
    """Strict cleanup met a hyperedge that shrank below two vertices."""


class NotContextual(MmphError):
    """Criticality was asked of a binary hypergraph."""


class CannotSatisfyConstraints(MmphError):
    pass


# algebra / coordinatizations

class DimensionMismatch(MmphError):
    pass


class ZeroVector(MmphError):
    pass


class NotOrthogonal(MmphError):
    pass


class InsufficientRank(MmphError):
    pass


class UnsupportedAtom(ParseError):
    pass


class RingMismatch(MmphError):
    pass


class AmbiguousInterval(MmphError):
    """Interval evaluation could not decide a zero test within the precision cap."""


class IncompleteCoordinatization(MmphError):
    pass


class BudgetExceeded(MmphError):
    pass


class NoCliques(MmphError):
    pass


class NotASubhypergraph(MmphError):
    pass
