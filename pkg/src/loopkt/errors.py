"""Exception hierarchy shared by every module of the package."""


class LoopKError(Exception):
    """Base class for all errors raised by loopkt."""


class NotInvariant(LoopKError):
    """A Laurent element is not fixed by the Weyl involution."""


class RingMismatch(LoopKError):
    pass


class IndexOutOfRange(LoopKError):
    pass


class NotSymmetric(LoopKError):
    pass


class NonUnitConstantTerm(LoopKError):
    pass


class NonzeroConstantTerm(LoopKError):
    pass


class LevelTooLow(LoopKError):
    pass


class IncompatibleTower(LoopKError):
    pass


class ResidueNonzero(LoopKError):
    """Elimination in the kernel basis left a nonzero remainder."""


class ParseError(LoopKError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownGenerator(ParseError):
    pass


class CoefficientNotInRing(ParseError):
    pass
