"""Exception hierarchy shared by the library and the CLI."""


class PBQuadError(Exception):
    """Base class for all pbquad errors."""


class UniverseMismatchError(PBQuadError, ValueError):
    """An assignment or a pair of functions disagree on the variable universe."""


class CapExceededError(PBQuadError):
    """An exhaustive procedure would exceed its configured enumeration cap."""


class NotSubmodularError(PBQuadError, ValueError):
    """A submodular quadratic was required but the input has a positive quadratic term."""


class ParseError(PBQuadError, ValueError):
    """Malformed ``.pbf`` input."""
