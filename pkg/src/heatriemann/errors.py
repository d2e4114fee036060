"""Exception hierarchy.

Input problems derive from :class:`InputError`, numerical breakdowns from
:class:`NumericalError` and failed self-checks from :class:`InvariantError`.
The CLI maps the three families to exit codes 1, 2 and 3.
"""


class HeatRiemannError(Exception):
    """Base class for every error raised by this package."""


class InputError(HeatRiemannError, ValueError):
    pass


class NumericalError(HeatRiemannError, ArithmeticError):
    pass


class InvariantError(HeatRiemannError):
    pass


class InvalidGamma(InputError):
    pass


class NonPhysical(InputError):
    pass


class NonPositiveMach(InputError):
    pass


class NonPositivePressure(InputError):
    pass


class MaxHeatExceeded(InputError):
    """Heating parameter above the choking limit for the given upstream Mach."""


class SonicUpstream(InputError):
    pass


class BackflowUnsupported(InputError):
    pass


class BranchUnavailable(InputError):
    pass


class LaxViolation(InputError):
    pass


class DomainViolation(InputError):
    pass


class VacuumGenerated(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class NoBracket(NumericalError):
    pass


class PositivityLoss(NumericalError):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class BoundaryContaminated(NumericalError):
    pass


class StructureMismatch(InvariantError):
    """A constructed fan does not have the wave pattern its type requires."""


class AmbiguousClassification(InvariantError):
    pass
