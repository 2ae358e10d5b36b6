"""Exception hierarchy shared by the numerical modules and the CLI."""


class BesselWaveError(Exception):
    """Base class for every error raised by :mod:`besselwave`.

    ``context`` carries the parameters of the failing evaluation (order,
    argument, time, location, ...) so callers and the CLI can report them.
    """

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context

    def __str__(self):
        msg = super().__str__()
        if self.context:
            extra = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
            msg = f"{msg} ({extra})"
        return msg

    def with_context(self, **context):
        """Return a copy of this error with extra context attached."""
        merged = {**self.context, **context}
        return type(self)(self.args[0] if self.args else "", **merged)


# special functions
class InvalidOrder(BesselWaveError, ValueError):
    pass


class NonConvergent(BesselWaveError, ArithmeticError):
    pass


class NearPole(BesselWaveError, ArithmeticError):
    pass


class PrecisionLoss(BesselWaveError, ArithmeticError):
    pass


class BesselOverflow(BesselWaveError, OverflowError):
    pass


# dispersion
class DenominatorUnderflow(BesselWaveError, ArithmeticError):
    pass


class BranchDegenerate(BesselWaveError, ArithmeticError):
    pass


class StepTooLarge(BesselWaveError, ArithmeticError):
    pass


# laplace / transient
class SingularityInsideContour(BesselWaveError, ValueError):
    pass


class QuadratureNonFinite(BesselWaveError, ArithmeticError):
    pass


class BranchAmbiguity(BesselWaveError, ValueError):
    pass


# cli
class ConfigError(BesselWaveError, ValueError):
    pass


class ComputeError(BesselWaveError, RuntimeError):
    pass
