"""Exception taxonomy shared across the package."""

from __future__ import annotations


class NLieError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatch(NLieError):
    """Two values (or algebras) from different ground fields were combined."""


class BadIndex(NLieError):
    """A 1-based basis index fell outside 1..d."""


class DimensionMismatch(NLieError):
    """A vector or argument list has the wrong length for the algebra."""


class WrongDimension(NLieError):
    """The operation needs d = n+2 (structure-matrix form) and got something else."""


class SingularMatrix(NLieError):
    """An invertible matrix was required."""


class ParamError(NLieError):
    """Catalog parameters violate an intrinsic constraint of the case."""


class CaseNotRealizable(NLieError):
    """The case's bracket patterns do not fit in the ambient dimension for this n."""


class NotNLie(NLieError):
    """The input table violates the generalized Jacobi identity.

    Carries one concrete violation as produced by the checker.
    """

    def __init__(self, violation):
        super().__init__(f"Jacobi identity fails at {violation}")
        self.violation = violation


class ParseError(NLieError):
    """Algebra-file syntax or consistency error.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateKey(ParseError):
    pass


class NonIncreasingIndices(ParseError):
    pass


class ScalarOutOfRange(ParseError):
    pass


class UnknownField(ParseError):
    pass
