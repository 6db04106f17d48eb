"""Exceptions raised by the shift, code and capacity packages."""


class ShiftError(Exception):
    """Base class for every error this toolkit raises on purpose."""


class SpecParseError(ShiftError, ValueError):
    """A graph file, gap-set spec or spoke spec could not be parsed."""


class BoundTooSmallError(ShiftError):
    """Eventual periodicity could not be certified within the search bound."""

    def __init__(self, bound: int, message: str = ""):
        self.bound = bound
        super().__init__(message or f"bound too small: periodicity not certified within {bound} steps")


class MarkerNotAllowedError(ShiftError):
    """The marker word D never occurs in the domain."""


class NotIrreducibleError(ShiftError):
    pass


class NotFiniteToOneError(ShiftError):
    """The code has a graph diamond."""


class NotGapShiftError(ShiftError, ValueError):
    """The image is not an S-gap shift: some sequence of gaps cannot be read in order."""

    def __init__(self, gaps: tuple[int, ...], message: str = ""):
        self.gaps = gaps
        super().__init__(message or f"image is not a gap shift: gaps {list(gaps)} cannot follow one another")


class InvalidWError(ShiftError):
    pass


class ConstructionError(ShiftError):
    """A construction hit an internal inconsistency."""


class EntropyError(ShiftError, ArithmeticError):
    pass


class BudgetExceededError(ShiftError):
    """An oracle request is larger than its budget allows."""
