"""Exception types raised by quadsim."""


class QuadsimError(Exception):
    """Base class for all quadsim errors."""


class InvalidRotationError(QuadsimError, ValueError):
    """A matrix handed in as a rotation is not orthonormal with det +1."""


class GimbalSingularityError(QuadsimError, ArithmeticError):
    """Euler-angle rates are undefined at the current pitch."""

    def __init__(self, pitch, message=None):
        self.pitch = pitch
        super().__init__(message or f"Euler-rate singularity at pitch {pitch!r} rad")


class InfeasibleWrenchError(QuadsimError, ValueError):
    """A requested wrench needs a negative squared rotor speed."""

    def __init__(self, rotor, value):
        self.rotor = rotor
        self.value = value
        super().__init__(f"wrench infeasible: u{rotor} = {value!r} < 0")


class ScenarioError(QuadsimError, ValueError):
    """A scenario file could not be parsed or failed validation."""
