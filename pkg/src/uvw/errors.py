class UVWError(Exception):
    """Base class for all workbench errors."""


class InfiniteDimensional(UVWError):
    pass


class MalformedRelation(UVWError):
    pass


class AlgebraMismatch(UVWError):
    pass


class SplitFailure(UVWError):
    pass


class NotInjective(UVWError):
    pass


class InternalInconsistency(UVWError):
    pass


class ValidationFailed(UVWError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class KnittingStuck(UVWError):
    pass


class SingularGram(UVWError):
    pass


class NonIntegerModel(UVWError):
    pass


class NotPolynomialCount(UVWError):
    pass


class NegativeExponent(UVWError):
    pass


class FanIncomplete(UVWError):
    pass


class OutsideSupport(UVWError):
    pass


class MatchAmbiguous(UVWError):
    pass


class MatchIncomplete(UVWError):
    pass


class UnmatchedSummand(UVWError):
    pass


class DomainError(UVWError):
    pass


class SampleOutOfRange(UVWError):
    pass


class NotConvergent(UVWError):
    pass


class UnknownCatalog(UVWError):
    pass
