"""Exception hierarchy.  Class names double as the error names the CLI reports."""


class PetalError(Exception):
    """Base class for every domain error raised by the package."""


# sequences
class Empty(PetalError, ValueError):
    pass


class EvenLength(PetalError, ValueError):
    pass


class NotAPermutation(PetalError, ValueError):
    pass


class IndexOutOfRange(PetalError, IndexError):
    pass


# diagrams
class MalformedGrid(PetalError, ValueError):
    pass


class MalformedDiagram(PetalError, ValueError):
    pass


class DegenerateGeometry(PetalError, ArithmeticError):
    pass


class MultiComponentClosure(PetalError, ValueError):
    pass


# invariants
class StateSpaceTooLarge(PetalError, RuntimeError):
    pass


class OverflowDetected(PetalError, OverflowError):
    pass


class TooManyCrossings(PetalError, ValueError):
    pass


# knot table
class MissingData(PetalError, FileNotFoundError):
    pass


class CorruptRecord(PetalError, ValueError):
    pass


# search
class NotFound(PetalError, LookupError):
    def __init__(self, p_max):
        super().__init__(f"no representation with at most {p_max} petals")
        self.p_max = p_max


class BudgetExceeded(PetalError, RuntimeError):
    pass


# sticks
class NonGenericDirection(PetalError, ValueError):
    pass
