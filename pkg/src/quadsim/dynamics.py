"""
Newton-Euler equations of motion and the 12-state model ``Xdot = f(X, U)``.

State layout (NED world frame, z positive down)::

    index  0  1  2   3    4      5    6   7   8   9  10  11
           x  y  z  phi theta  psi   xd  yd  zd   p   q   r

Slots 9-11 hold body angular rates. Attitude rates are obtained from them
through the Euler-rate map, and their own derivatives come from Euler's
rotational equation ``I wdot + w x (I w) = tau``.
"""

from __future__ import annotations

import math

import numpy as np

from quadsim.errors import GimbalSingularityError
from quadsim.euler_kinematics import DEFAULT_SINGULARITY_TOL, euler_rates_from_body_rates
from quadsim.params import InertiaTensor, VehicleParams
from quadsim.rotor_model import wrench_from_input

STATE_NAMES = ("x", "y", "z", "phi", "theta", "psi", "xd", "yd", "zd", "p", "q", "r")
STATE_SIZE = 12

POS = slice(0, 3)
ATT = slice(3, 6)
VEL = slice(6, 9)
RATES = slice(9, 12)


def make_state(position=(0.0, 0.0, 0.0), attitude=(0.0, 0.0, 0.0),
               velocity=(0.0, 0.0, 0.0), rates=(0.0, 0.0, 0.0)) -> np.ndarray:
    """Assemble a 12-element state vector."""
    return np.concatenate([position, attitude, velocity, rates]).astype(float)


def _diag(inertia):
    if isinstance(inertia, InertiaTensor):
        return inertia.ixx, inertia.iyy, inertia.izz
    ixx, iyy, izz = (float(v) for v in inertia)
    return ixx, iyy, izz


def translational_accel(angles, thrust: float, params: VehicleParams) -> np.ndarray:
    """World-frame acceleration from gravity and body-axis thrust.

    Thrust of magnitude ``thrust`` acts along body -z; gravity along world +z.
    """
    if thrust < 0:
        raise ValueError(f"thrust magnitude must be >= 0, got {thrust}")
    phi, theta, psi = angles
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, sth = math.cos(theta), math.sin(theta)
    cpsi, spsi = math.cos(psi), math.sin(psi)
    k = thrust / params.m
    return np.array(
        [
            -k * (cphi * sth * cpsi + sphi * spsi),
            -k * (cphi * sth * spsi - sphi * cpsi),
            params.g - k * (cphi * cth),
        ]
    )


def gyroscopic_term(rates, inertia) -> np.ndarray:
    """``w x (I w)`` for a diagonal inertia."""
    p, q, r = rates
    ixx, iyy, izz = _diag(inertia)
    return np.array([(izz - iyy) * q * r, (ixx - izz) * r * p, (iyy - ixx) * p * q])


def angular_accel(rates, torques, inertia) -> np.ndarray:
    """Body angular acceleration ``I^-1 (tau - w x (I w))``."""
    p, q, r = rates
    tx, ty, tz = torques
    ixx, iyy, izz = _diag(inertia)
    return np.array(
        [
            (tx + (iyy - izz) * q * r) / ixx,
            (ty + (izz - ixx) * r * p) / iyy,
            (tz + (ixx - iyy) * p * q) / izz,
        ]
    )


def check_state(state) -> np.ndarray:
    state = np.asarray(state, dtype=float).reshape(-1)
    if state.shape != (STATE_SIZE,):
        raise ValueError(f"state must have {STATE_SIZE} entries, got {state.shape}")
    if not np.all(np.isfinite(state)):
        raise ValueError(f"state has non-finite entries: {state.tolist()}")
    return state


def check_attitude(state, tol: float = DEFAULT_SINGULARITY_TOL) -> None:
    """Raise :class:`GimbalSingularityError` if the pitch is outside the propagable range."""
    theta = float(state[4])
    if abs(theta) >= 0.5 * math.pi:
        raise GimbalSingularityError(theta, f"pitch {theta!r} rad left the range |theta| < pi/2")
    if abs(math.cos(theta)) < tol:
        raise GimbalSingularityError(theta)


def state_derivative(state, u, params: VehicleParams,
                     tol: float = DEFAULT_SINGULARITY_TOL) -> np.ndarray:
    """Evaluate ``f(X, U)``.

    Parameters
    ----------
    state : array_like, shape (12,)
        See module docstring for the layout.
    u : array_like, shape (4,)
        Squared rotor speeds.
    params : VehicleParams
    tol : float
        Minimum accepted ``|cos(theta)|``.

    Raises
    ------
    GimbalSingularityError
        If ``|cos(theta)| < tol`` or ``|theta| >= pi/2``; Euler angles cannot
        carry the attitude through the vertical.
    ValueError
        If the state is not 12 finite numbers.
    """
    state = check_state(state)
    angles = state[ATT]
    rates = state[RATES]
    check_attitude(state, tol)

    wrench = wrench_from_input(u, params)
    deriv = np.empty(STATE_SIZE)
    deriv[POS] = state[VEL]
    deriv[ATT] = euler_rates_from_body_rates(angles, rates, tol)
    deriv[VEL] = translational_accel(angles, wrench.thrust, params)
    deriv[RATES] = angular_accel(rates, wrench[1:], params.inertia)
    return deriv
