"""Exception hierarchy.

Mathematical failures (a certification that does not hold) derive from
:class:`VerdictFailure`; malformed input derives from :class:`UsageError`.
The command line maps these onto exit codes 1 and 2.
"""


class ProlieError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UsageError(ProlieError):
    pass


class VerdictFailure(ProlieError):
    pass


class IndexOutOfDomain(UsageError):
    pass


class AmbiguousRule(UsageError):
    pass


class OverlapError(AmbiguousRule):
    pass


class InvalidWeighting(UsageError):
    pass


class UnknownName(UsageError):
    pass


class NameCollision(UsageError):
    pass


class WindowMismatch(UsageError):
    pass


class MixedQuotients(UsageError):
    pass


class NotAlternating(UsageError):
    pass


class DomainEscape(UsageError):
    pass


class LayerDeficient(VerdictFailure):
    pass


class JacobiFailure(VerdictFailure):
    pass


class RadicalViolation(VerdictFailure):
    pass


class CodimBound(VerdictFailure):
    pass


class NotCocycle(VerdictFailure):
    pass


class NonTerminating(VerdictFailure):
    pass


class DSLSyntaxError(UsageError):
    """Parse failure carrying a 1-based position and the tokens that would fit."""

    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        text = "%d:%d: %s" % (line, col, message)
        if self.expected:
            text += " (expected %s)" % ", ".join(self.expected)
        super().__init__(text)
