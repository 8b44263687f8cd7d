"""Exception hierarchy and enumeration budgets."""

import os


class SurfcalcError(Exception):
    """Base class for domain errors. The CLI maps these to exit code 1."""

    @property
    def kind(self):
        return type(self).__name__


class LatticeMismatch(SurfcalcError):
    pass


class BudgetExceeded(SurfcalcError):
    pass


class InvariantViolation(SurfcalcError):
    pass


class NotContractible(SurfcalcError):
    pass


class NotNegDef(SurfcalcError):
    pass


class NotNegDefSupport(SurfcalcError):
    pass


class NotMinimal(SurfcalcError):
    pass


class InvalidSubscroll(SurfcalcError):
    pass


class ArityError(SurfcalcError):
    pass


class InvalidFiber(SurfcalcError):
    pass


class InvalidInvariants(SurfcalcError):
    pass


class NotApplicable(SurfcalcError):
    pass


class NotAmple(SurfcalcError):
    pass


class NotInScope(SurfcalcError):
    pass


def budget(default):
    """Enumeration cap, overridable through ``SURFCALC_BUDGET``."""
    raw = os.environ.get("SURFCALC_BUDGET")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default
