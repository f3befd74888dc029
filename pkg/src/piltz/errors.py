"""Exception hierarchy shared by all modules."""


class PiltzError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(PiltzError, ValueError):
    pass


# field_core
class NotFundamental(PreconditionError):
    pass


class NotMonic(PreconditionError):
    pass


class Reducible(PreconditionError):
    pass


class DegreeTooSmall(PreconditionError):
    pass


class NotPrime(PreconditionError):
    pass


class FieldFileError(PreconditionError):
    pass


# coeff_sieve
class OverflowRisk(PiltzError, ArithmeticError):
    pass


class LengthMismatch(PreconditionError):
    pass


class RangeExceeded(PreconditionError):
    pass


class CacheMismatch(PiltzError):
    pass


# analytic_engine
class Unsupported(PiltzError):
    pass


class NonConvergence(PiltzError, ArithmeticError):
    pass


class InsufficientTruncation(PreconditionError):
    pass


class PoleAt1(PreconditionError):
    pass


class NearSingularity(PreconditionError):
    pass


class EmptyGrid(PreconditionError):
    pass


class QuadratureFailure(PiltzError, ArithmeticError):
    pass


# bounds_lab
class NotAGroup(PreconditionError):
    pass


class NotASubgroup(PreconditionError):
    pass


class EmptyTermList(PreconditionError):
    pass


class InvalidRange(PreconditionError):
    pass


class RangeViolation(PreconditionError):
    pass


class TableTooShort(PreconditionError):
    pass


class NoAdmissibleWindow(PreconditionError):
    pass


class CoefficientOutOfRange(PreconditionError):
    pass


# experiment_cli
class DegenerateFit(PiltzError):
    pass


class InsufficientPoints(DegenerateFit):
    pass


class ConfigError(PreconditionError):
    pass
