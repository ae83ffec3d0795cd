"""Exception types raised across the library.

Every public error carries a stable class name that the CLI reports as its
machine-readable ``code`` field.
"""


class SzilardError(Exception):
    """Base class for all library errors."""


class NotNormalized(SzilardError):
    pass


class BadOutcomeLength(SzilardError):
    pass


class NegativeProbability(SzilardError):
    pass


class SupportOverflow(SzilardError):
    pass


class WeightSumError(SzilardError):
    pass


class MixedArity(SzilardError):
    pass


class EmptySubset(SzilardError):
    pass


class IndexOutOfRange(SzilardError):
    pass


class NotBijective(SzilardError):
    pass


class ArityMismatch(SzilardError):
    pass


class BadEpsilon(SzilardError):
    pass


class BiasedBitsPresent(SzilardError):
    pass


class SamePosition(SzilardError):
    pass


class NonpositiveTemperature(SzilardError):
    pass


class InvalidBets(SzilardError):
    pass


class BadBetSize(SzilardError):
    pass


class TooLarge(SzilardError):
    pass


class ParseError(SzilardError):
    """Input-spec syntax or semantic error, annotated with source position."""

    def __init__(self, message: str, line: int, col: int, expected: str | None = None):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
