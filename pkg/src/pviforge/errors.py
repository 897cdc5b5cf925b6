"""Exception hierarchy.

Every exception carries a ``stage`` tag so the command line can report which
part of the pipeline failed.
"""


class PviForgeError(Exception):
    stage = "general"


# numerics
class PoleError(PviForgeError, ZeroDivisionError):
    stage = "numerics"


class NoSolutionError(PviForgeError):
    stage = "rationalization"


class AmbiguousError(PviForgeError):
    stage = "rationalization"


class SeriesInversionError(PviForgeError, ZeroDivisionError):
    stage = "series"


# character varieties
class DivisionByZero(PviForgeError, ZeroDivisionError):
    stage = "char-variety"


class SignConstraintError(PviForgeError, ValueError):
    stage = "char-variety"


class OrbitOverflow(PviForgeError):
    stage = "orbit"


class ReducibleDataError(PviForgeError, ValueError):
    stage = "char-variety"


class ResidualError(PviForgeError, ValueError):
    stage = "char-variety"


class DegenerateError(PviForgeError, ValueError):
    stage = "catalog"


class NonTransitiveError(PviForgeError, ValueError):
    stage = "catalog"


class RoundingError(PviForgeError):
    stage = "catalog"


# jimbo
class DomainError(PviForgeError, ValueError):
    stage = "validity"


class ZeroSigmaError(PviForgeError, ValueError):
    stage = "validity"


class ValidityError(PviForgeError, ValueError):
    stage = "validity"

    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class ZeroShat(PviForgeError, ZeroDivisionError):
    stage = "validity"


class DegenerateDenominator(PviForgeError, ZeroDivisionError):
    stage = "validity"


# series and curve
class ResonanceError(PviForgeError):
    stage = "resonance"

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class FractionalResidueError(PviForgeError):
    stage = "fractional-residue"


class NonRationalCoefficient(PviForgeError):
    stage = "rationalization"


class PathTooClose(PviForgeError):
    stage = "cover-monodromy"


# fuchsian
class SingularPointError(PviForgeError, ValueError):
    stage = "reconstruction"


class DegenerateParameters(PviForgeError, ValueError):
    stage = "reconstruction"


class GaugeDegenerateError(PviForgeError, ValueError):
    stage = "reconstruction"


class DependentImagesError(PviForgeError, ValueError):
    stage = "reconstruction"


class ConstantPolynomialError(PviForgeError, ValueError):
    stage = "reconstruction"


class StepFailure(PviForgeError):
    stage = "monodromy"


# killing / bjl
class DegenerateDiagonal(PviForgeError, ZeroDivisionError):
    stage = "killing"


class NotInBigCell(PviForgeError, ValueError):
    stage = "killing"


class SingularU(PviForgeError, ValueError):
    stage = "killing"


class NoUnitEigenvalue(PviForgeError, ValueError):
    stage = "killing"


class IrreducibleError(PviForgeError, ValueError):
    stage = "killing"


# command line
class ParseError(PviForgeError, ValueError):
    stage = "parse"
