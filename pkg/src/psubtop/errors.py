"""Exception types shared across the package."""


class PsubtopError(Exception):
    """Base class for all package-specific errors."""


class OrderLimitExceeded(PsubtopError):
    """Group closure grew past the configured maximum order."""


class PrimeDoesNotDivide(PsubtopError):
    """The requested prime does not divide the group order."""


class EmptyFamily(PsubtopError):
    """An operation received an empty subgroup family where members are required."""


class EmptyPoset(PsubtopError):
    """An operation received an empty poset where elements are required."""


class NotReducedLattice(PsubtopError):
    """The poset is not the proper part of a lattice (a bounded pair lacks a meet/join)."""


class NeitherAtomicNorCoatomic(PsubtopError):
    """The alternating retraction sequence needs an atomic or coatomic reduced lattice."""


class SizeLimitExceeded(PsubtopError):
    """Exhaustive search was requested on a poset above the size limit."""


class MissingAction(PsubtopError):
    """An equivariant operation was called on a poset without a group action."""


class DimensionOutOfRange(PsubtopError):
    """Boundary matrix requested outside 1..dim(K)."""


class EmptyComplex(PsubtopError):
    """Homology of the empty simplicial complex was requested."""


class ParseError(PsubtopError):
    """Malformed group file.  Carries 1-based line and column of the offence."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class DegreeMismatch(PsubtopError):
    """A permutation mentions points outside 1..degree."""


class RowTimeout(PsubtopError):
    """A batch row exceeded its wall-clock budget."""
