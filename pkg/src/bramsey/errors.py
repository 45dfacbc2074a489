"""Exception hierarchy shared by all bramsey modules."""


class BramseyError(Exception):
    """Base class for every error raised by this package."""


class CapacityExceeded(BramseyError):
    pass


class IndexOutOfRange(BramseyError):
    pass


class RowCountMismatch(BramseyError):
    pass


class SpecMismatch(BramseyError):
    pass


class BadK(BramseyError):
    pass


class UnsupportedRedTarget(BramseyError):
    pass


class EncodingTooLarge(BramseyError):
    pass


class IncompleteModel(BramseyError):
    pass


class UnknownVariable(BramseyError):
    pass


class SolverFailure(BramseyError):
    pass


class TooLarge(BramseyError):
    pass


class WitnessFormatError(BramseyError):
    """A witness or certificate file could not be parsed."""
