"""Exception hierarchy.

Every error raised on bad input derives from :class:`CoverGameError`, which is
itself a ``ValueError`` so callers that only care about "bad value" can catch
that.  The CLI prints ``<ClassName>: <message>`` and exits with status 1.
"""


class CoverGameError(ValueError):
    pass


class InvalidCode(CoverGameError):
    pass


class InvalidPermutation(CoverGameError):
    pass


class NTooLarge(CoverGameError):
    pass


class DuplicateValues(CoverGameError):
    pass


class NonFiniteInput(CoverGameError):
    pass


class TooFewValues(CoverGameError):
    pass


class DimensionMismatch(CoverGameError):
    pass


class UnknownStrategy(CoverGameError):
    pass


class InvalidDistribution(CoverGameError):
    pass


class BoundaryPoint(CoverGameError):
    pass


class NotDescending(CoverGameError):
    pass


class InvalidConfig(CoverGameError):
    pass


class InfeasibleGap(CoverGameError):
    pass


class RegionViolation(CoverGameError):
    pass


class MissingAssignment(CoverGameError):
    pass


class InvalidParameter(CoverGameError):
    pass


class UnsupportedFormat(CoverGameError):
    pass
