"""Exception hierarchy shared by every module."""


class PrincError(Exception):
    """Base class for all errors raised by this package."""


class CycleDetected(PrincError):
    pass


class NoBounds(PrincError):
    pass


class EmptyOrder(PrincError):
    pass


class TrivialOrder(PrincError):
    pass


class NotIsotone(PrincError):
    pass


class SizeLimitExceeded(PrincError):
    pass


class NotALattice(PrincError):
    def __init__(self, x, y, what="join"):
        self.pair = (x, y)
        self.what = what
        super().__init__(f"no unique {what} for ({x}, {y})")


class NotAHomomorphism(PrincError):
    pass


class NotACongruence(PrincError):
    pass


class BoundElement(PrincError):
    pass


class MissingLabels(PrincError):
    pass


class WellDefinednessViolation(PrincError):
    pass


class NotZeroSeparating(PrincError):
    pass


class HypothesisViolated(PrincError):
    pass


class NotADownSet(PrincError, ValueError):
    pass
