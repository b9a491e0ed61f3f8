"""Physical parameters of the vehicle."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np


def _require_positive(name, value):
    if not (isinstance(value, (int, float)) and not isinstance(value, bool)):
        raise ValueError(f"{name} must be a number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be > 0 (got {value!r})")


@dataclass(frozen=True)
class InertiaTensor:
    """Diagonal inertia tensor in body axes, kg m^2.

    Besides positivity the principal moments must satisfy the triangle
    inequalities, otherwise no mass distribution can produce them.
    """

    ixx: float
    iyy: float
    izz: float

    def __post_init__(self):
        for name in ("ixx", "iyy", "izz"):
            _require_positive(name, getattr(self, name))
        a, b, c = self.ixx, self.iyy, self.izz
        # Relative slack so that exactly planar bodies (a + b == c) survive rounding.
        slack = 1e-12 * (a + b + c)
        if a + b < c - slack or b + c < a - slack or a + c < b - slack:
            raise ValueError(
                f"inertia ({a}, {b}, {c}) violates the triangle inequality"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.ixx, self.iyy, self.izz])

    def matrix(self) -> np.ndarray:
        return np.diag(self.as_array())


@dataclass(frozen=True)
class VehicleParams:
    """Mass, inertia, rotor coefficients and gravity.

    Attributes
    ----------
    m : float
        Mass [kg].
    ixx, iyy, izz : float
        Principal moments of inertia [kg m^2].
    ka : float
        Thrust coefficient, thrust per squared rotor speed [N s^2/rad^2].
    km : float
        Drag-moment coefficient [N m s^2/rad^2].
    l : float
        Arm length, centre to rotor hub [m].
    g : float
        Gravitational acceleration [m/s^2].
    """

    m: float = 0.5
    ixx: float = 5.0e-3
    iyy: float = 5.0e-3
    izz: float = 9.0e-3
    ka: float = 3.0e-6
    km: float = 1.1e-7
    l: float = 0.25
    g: float = 9.81

    def __post_init__(self):
        for name in ("m", "ixx", "iyy", "izz", "ka", "km", "l", "g"):
            _require_positive(name, getattr(self, name))
        # Validates the triangle inequalities as well.
        self.inertia

    @cached_property
    def inertia(self) -> InertiaTensor:
        return InertiaTensor(self.ixx, self.iyy, self.izz)

    def to_dict(self) -> dict:
        return asdict(self)
