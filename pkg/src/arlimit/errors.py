"""Exception hierarchy shared by the solvers, the scheme and the CLI."""


class RiemannError(ValueError):
    """Base class for invalid data or a failed exact solve."""


class NonPositiveDensity(RiemannError):
    pass


class GammaOutOfRange(RiemannError):
    pass


class DomainError(RiemannError):
    pass


class NotAdmissible(RiemannError):
    pass


class NotDeltaRegime(RiemannError):
    pass


class BranchError(RiemannError):
    pass


class NegativeRoot(RiemannError):
    pass


class NegativeRadicand(RiemannError):
    pass


class NegativeVelocity(RiemannError):
    pass


class RegionMismatch(RiemannError):
    pass


class StructureError(RiemannError):
    pass


class NoConvergence(RuntimeError):
    pass


class UnstableBlowup(RuntimeError):
    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class NonMonotone(RuntimeError):
    pass


class GridError(ValueError):
    pass
