"""Exception hierarchy shared by all totalpos modules."""

from __future__ import annotations


class TotalposError(Exception):
    """Base class for all library errors."""


class ParseError(TotalposError):
    """Malformed textual input (CSV/JSON cells, CLI value specs)."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)


class NonSquareError(TotalposError):
    pass


class NonExactEntryError(TotalposError):
    """An exact-backend operation received a float entry."""


class BadWidthError(TotalposError):
    pass


class BadDomainError(TotalposError):
    pass


class EnclosureWidthError(TotalposError):
    """Requested enclosure width is beyond the refinement schedule."""


class IndexOutOfRangeError(TotalposError):
    pass


class NotStrictlyIncreasingError(TotalposError):
    pass


class SelectorShapeError(TotalposError):
    """Row and column index lists of a minor selector differ in length."""


class TooShortError(TotalposError):
    pass


class TooSmallError(TotalposError):
    pass


class NonPositiveEntryError(TotalposError):
    def __init__(self, cell: tuple[int, int], value):
        self.cell = cell
        self.value = value
        super().__init__(f"entry at {cell} is not strictly positive: {value}")


class FactorBelowCError(TotalposError):
    pass


class InconsistentCornerError(TotalposError):
    pass


class OrderTooLargeError(TotalposError):
    pass


class NotBandedError(TotalposError):
    pass


class BandDegenerateError(TotalposError):
    pass


class HypothesisUnmetError(TotalposError):
    pass


class CNotBelowCkError(TotalposError):
    """The requested constant is not certified below the sharp constant."""

    def __init__(self, message: str, enclosure=None, uncertain: bool = False):
        self.enclosure = enclosure
        self.uncertain = uncertain
        super().__init__(message)


class NoConvergenceError(TotalposError):
    pass


class BadEpsilonsError(TotalposError):
    pass


class NeedMorePointsError(TotalposError):
    pass


class OracleMismatchError(TotalposError):
    """A certified conclusion disagreed with the brute-force oracle."""
