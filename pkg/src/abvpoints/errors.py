"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`AbvError`.
The three intermediate classes map onto CLI exit codes: bad input (2),
a theorem hypothesis that does not hold (1) and an exhausted resource cap (3).
"""

from __future__ import annotations


class AbvError(Exception):
    """Base class."""

    exit_code = 1

    @property
    def reason(self) -> str:
        return type(self).__name__


class InvalidInput(AbvError):
    exit_code = 2


class HypothesisNotMet(AbvError):
    """A theorem hypothesis failed; ``check`` names the failing certificate."""

    exit_code = 1

    def __init__(self, check: str, message: str = ""):
        super().__init__(f"{check}: {message}" if message else check)
        self.check = check

    @property
    def reason(self) -> str:
        return self.check


class ResourceCap(AbvError):
    exit_code = 3


class InternalConsistencyError(AbvError):
    """Two independent computations disagreed. Always a bug."""

    exit_code = 1


# exactcore
class SingularMatrix(InvalidInput):
    pass


class FactorTooLarge(ResourceCap):
    pass


class DegreeCapExceeded(ResourceCap):
    pass


# weil
class NotMonic(InvalidInput):
    pass


class BadDegreeParity(InvalidInput):
    pass


class SymmetryViolated(InvalidInput):
    pass


class RootModulusViolated(InvalidInput):
    pass


class NotPrimePower(InvalidInput):
    pass


class NotPrimePowerShape(InvalidInput):
    pass


# orders
class NotARing(InvalidInput):
    pass


class NotFullRank(InvalidInput):
    pass


class ZeroIdeal(InvalidInput):
    pass


class ZeroElement(InvalidInput):
    pass


class NotInOrder(InvalidInput):
    pass


class BadPrime(ResourceCap):
    pass


class IndexCapExceeded(ResourceCap):
    pass


class NotCoprime(HypothesisNotMet):
    def __init__(self, message: str = ""):
        super().__init__("NotCoprimeToConductor", message)


# structure
class SeparabilityUnknown(HypothesisNotMet):
    def __init__(self, message: str = ""):
        super().__init__("SeparabilityUnknown", message)


class NotInvertiblePrime(HypothesisNotMet):
    def __init__(self, message: str = ""):
        super().__init__("NotInvertiblePrime", message)


class ResidueCharacteristicP(HypothesisNotMet):
    def __init__(self, message: str = ""):
        super().__init__("ResidueCharacteristicP", message)


class OutOfTheoremScope(HypothesisNotMet):
    def __init__(self, message: str = ""):
        super().__init__("OutOfTheoremScope", message)


# oracles
class FieldTooLarge(ResourceCap):
    pass


class SingularCurve(InvalidInput):
    pass
