"""Exception types raised by scalecheck analyses and generators."""


class ScalecheckError(Exception):
    """Base class for all scalecheck domain errors."""


class EmptyInput(ScalecheckError):
    pass


class DegenerateFit(ScalecheckError):
    pass


class NonpositiveValue(ScalecheckError):
    pass


class NotApplicable(ScalecheckError):
    """Analysis undefined for this kind of input (e.g. segment variance on words)."""


class InsufficientLength(ScalecheckError):
    pass


class InsufficientSegments(ScalecheckError):
    pass


class AllSigmaZero(ScalecheckError):
    pass


class ZeroVariance(ScalecheckError):
    pass


class SeriesTooShort(ScalecheckError):
    pass


class TooFewIntervals(ScalecheckError):
    pass


class InvalidParam(ScalecheckError):
    pass


class InsufficientData(ScalecheckError):
    pass


class OovToken(ScalecheckError):
    pass


class ParseError(ScalecheckError):
    """Malformed bracketed tree; carries the character offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class EmptyTreebank(ScalecheckError):
    pass


class UnproductiveGrammar(ScalecheckError):
    pass
