"""Exception types shared across the package."""


class UqTwistError(Exception):
    pass


class ConfigError(UqTwistError, ValueError):
    """Invalid type label, rank or root-of-unity order."""


class SpecializationPole(UqTwistError, ArithmeticError):
    """A generic scalar has a pole at the chosen root of unity."""


class EngineError(UqTwistError, RuntimeError):
    """Internal inconsistency of the algebra engine (a bug, not a user error)."""


class OracleBound(UqTwistError):
    """Request beyond the degree bound of the shuffle oracle."""


class UnsupportedDegreeZero(UqTwistError):
    """Degree-zero twist coefficients are not roots of unity of l-power order."""


class NotAUnit(UqTwistError):
    """Element is not invertible."""


class NotACocycle(UqTwistError):
    """Input to a bounding solve is not a 2-cocycle."""


class ConventionError(UqTwistError):
    """A convention-dependent construction failed its certifying check."""


class TheoremViolation(UqTwistError):
    """An obstruction appeared where the classification forbids one."""
