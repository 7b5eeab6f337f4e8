"""Exception hierarchy.

Mathematical precondition failures derive from ``CharsumError`` (a
``ValueError``).  Failures that contradict a theorem the library relies on
derive from ``InternalError``; the CLI maps those to exit code 3.
"""


class CharsumError(ValueError):
    pass


class InternalError(RuntimeError):
    pass


# finite fields
class NotPrime(CharsumError):
    pass


class CharTooSmall(CharsumError):
    pass


class ReducibleModulus(CharsumError):
    pass


class DivisionByZero(CharsumError, ZeroDivisionError):
    pass


class NonResidue(CharsumError):
    pass


class NotCoprime(CharsumError):
    pass


class NoSuchRoot(CharsumError):
    pass


class NoEmbedding(CharsumError):
    pass


class FieldTooLarge(CharsumError):
    pass


# curves
class SingularCurve(CharsumError):
    pass


class CurveMismatch(CharsumError):
    pass


class CoefficientsNotRational(CharsumError):
    pass


# isogenies
class NotExactOrder(CharsumError):
    pass


class TooFewSamplePoints(InternalError):
    pass


class ComplementCodomainMismatch(InternalError):
    pass


# formal expansions
class PrecisionTooLow(CharsumError):
    pass


class NonProportional(InternalError):
    pass


# character sums
class NoPreimage(InternalError):
    pass


class NoExponent(InternalError):
    pass


class UnsupportedM(CharsumError):
    pass


# families / class numbers
class WrongOrder(CharsumError):
    pass


class BadReduction(CharsumError):
    pass


class CongruenceViolated(CharsumError):
    pass
