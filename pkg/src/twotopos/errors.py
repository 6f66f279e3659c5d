"""Exception hierarchy shared by every module."""


class CategoryError(Exception):
    """Base class for all errors raised by twotopos."""


class CardinalityExceeded(CategoryError):
    """An enumeration grew past its configured bound."""


class Cancelled(CategoryError):
    """A cooperative cancellation token was signalled."""


class UnknownObject(CategoryError, KeyError):
    pass


class CospanMismatch(CategoryError):
    pass


class TriangleMismatch(CategoryError):
    pass


class ShapeMismatch(CategoryError):
    pass


class BoundaryMismatch(CategoryError):
    pass


class NotAFibration(CategoryError):
    pass


class NoLift(CategoryError):
    pass


class NoColimit(CategoryError):
    pass


class NoLimit(CategoryError):
    pass


class NotAdmissible(CategoryError):
    pass


class NotACosieve(CategoryError):
    pass


class NoAdjoint(CategoryError):
    pass


class TruncationUnderflow(CategoryError):
    pass


class BadConfig(CategoryError):
    pass


class MissingCorpus(CategoryError):
    pass
