"""Exception hierarchy shared by all modules."""


class RLandauError(Exception):
    """Base class for every error raised by the toolkit."""


class PhysicsError(RLandauError):
    """Failure of a physics computation (mapped to CLI exit code 2)."""


class ConfigError(RLandauError):
    """Malformed or inconsistent configuration (mapped to CLI exit code 3)."""


class InvalidFieldError(PhysicsError, ValueError):
    pass


class InvalidQuantumNumberError(PhysicsError, ValueError):
    pass


class InvalidPotentialError(PhysicsError, ValueError):
    pass


class InvalidSeparationError(PhysicsError, ValueError):
    pass


class NoEigenvalueFound(PhysicsError):
    pass


class UnboundStateError(PhysicsError):
    pass


class IllConditionedFit(PhysicsError):
    pass


class QuadratureError(PhysicsError):
    pass


class SolverError(PhysicsError):
    pass


class RangeError(PhysicsError, OverflowError):
    pass


class ConfigMismatchError(PhysicsError, ValueError):
    pass


class NotAnEmissionError(PhysicsError, ValueError):
    pass


class ResonantIntermediateError(PhysicsError, ZeroDivisionError):
    pass


class LadderTruncationError(PhysicsError):
    pass


class AdiabaticityWarning(RuntimeWarning):
    """Raised as a warning when |Omega/Delta| is too large for adiabatic elimination."""
