"""
Mapping between body angular rates (p, q, r) and ZYX Euler-angle rates.

The forward map (Euler rates -> body rates) is defined for every attitude.
The inverse contains ``tan(theta)`` and ``sec(theta)`` and blows up at
``theta = +-pi/2``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from quadsim.errors import GimbalSingularityError

#: Minimum |cos(pitch)| accepted by :func:`euler_rates_from_body_rates`.
DEFAULT_SINGULARITY_TOL = 1e-6


class BodyRates(NamedTuple):
    """Angular velocity in body axes, rad/s."""

    p: float
    q: float
    r: float


class EulerRates(NamedTuple):
    """Time derivative of (roll, pitch, yaw), rad/s."""

    roll_rate: float
    pitch_rate: float
    yaw_rate: float


def body_rates_from_euler_rates(angles, rates) -> BodyRates:
    """Body angular velocity produced by the given Euler-angle rates."""
    phi, theta, _ = angles
    dphi, dtheta, dpsi = rates
    sphi, cphi = math.sin(phi), math.cos(phi)
    sth, cth = math.sin(theta), math.cos(theta)
    return BodyRates(
        dphi - sth * dpsi,
        cphi * dtheta + cth * sphi * dpsi,
        cth * cphi * dpsi - sphi * dtheta,
    )


def euler_rates_from_body_rates(angles, rates, tol: float = DEFAULT_SINGULARITY_TOL) -> EulerRates:
    """Euler-angle rates for a body angular velocity.

    Raises
    ------
    GimbalSingularityError
        If ``|cos(pitch)| < tol``.
    """
    phi, theta, _ = angles
    p, q, r = rates
    cth = math.cos(theta)
    if abs(cth) < tol:
        raise GimbalSingularityError(theta)
    sphi, cphi = math.sin(phi), math.cos(phi)
    tth = math.sin(theta) / cth
    return EulerRates(
        p + q * sphi * tth + r * cphi * tth,
        q * cphi - r * sphi,
        (q * sphi + r * cphi) / cth,
    )


def body_rates_matrix(angles) -> np.ndarray:
    """Matrix ``W`` with ``[p, q, r] = W @ [roll_rate, pitch_rate, yaw_rate]``."""
    phi, theta, _ = angles
    sphi, cphi = math.sin(phi), math.cos(phi)
    sth, cth = math.sin(theta), math.cos(theta)
    return np.array(
        [
            [1.0, 0.0, -sth],
            [0.0, cphi, cth * sphi],
            [0.0, -sphi, cth * cphi],
        ]
    )


def euler_rates_matrix(angles, tol: float = DEFAULT_SINGULARITY_TOL) -> np.ndarray:
    """Closed-form inverse of :func:`body_rates_matrix`."""
    phi, theta, _ = angles
    cth = math.cos(theta)
    if abs(cth) < tol:
        raise GimbalSingularityError(theta)
    sphi, cphi = math.sin(phi), math.cos(phi)
    tth = math.sin(theta) / cth
    return np.array(
        [
            [1.0, sphi * tth, cphi * tth],
            [0.0, cphi, -sphi],
            [0.0, sphi / cth, cphi / cth],
        ]
    )
