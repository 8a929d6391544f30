"""Exception types shared across the package."""


class LTForgeError(Exception):
    """Base class for all library errors."""


class BadPrime(LTForgeError):
    pass


class NotIrreducible(LTForgeError):
    pass


class NotEisenstein(LTForgeError):
    pass


class PrecisionExhausted(LTForgeError):
    """An element is indistinguishable from zero at its precision, or an
    operation would return a value with no certified digits left."""


class WrongLevel(LTForgeError):
    pass


class NonzeroConstantTerm(LTForgeError):
    pass


class NonIntegralCoefficient(LTForgeError):
    pass


class NotLubinTate(LTForgeError):
    pass


class NotIntegral(LTForgeError):
    pass


class OutsideConvergenceDisc(LTForgeError):
    pass


class SeriesNotPolynomial(LTForgeError):
    pass


class TailBoundViolated(LTForgeError):
    """A runtime coefficient-valuation assumption failed, so certified tail
    cutoffs cannot be chosen."""


class NotRegular(LTForgeError):
    pass


class RegularFieldGiven(LTForgeError):
    pass


class NotInSpan(LTForgeError):
    pass


class RankDeficient(LTForgeError):
    pass


class StuckLevel(LTForgeError):
    """No generator covers the current remainder level in a greedy
    digit expansion; falsifies the spanning claim being exercised."""


class RatioTooSmall(LTForgeError):
    """Raised when v_L(pi) < q - 1: the logarithm image is all of the
    maximal ideal and the minimal valuation is 1."""


class InternalCheckFailed(LTForgeError):
    """A redundant internal cross-check disagreed beyond what precision
    accounting allows.  Always a bug, never a user error."""
