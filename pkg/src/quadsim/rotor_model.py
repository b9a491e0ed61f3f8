"""
Rotor thrust/moment model and motor mixing.

Rotor layout (body axes, NED, viewed from above)::

            1 (+x)
            |
    4 ------+------ 2 (+y)
            |
            3

Rotors 1 and 3 spin one way, 2 and 4 the other. Each rotor produces a
thrust of magnitude ``ka * w_i**2`` along body -z and a reaction moment
``km * w_i**2``. The control input is the vector of squared rotor speeds
``u = [w1^2, w2^2, w3^2, w4^2]``.

    T     = ka * (u1 + u2 + u3 + u4)
    tau_x = ka * l * (u4 - u2)
    tau_y = ka * l * (u1 - u3)
    tau_z = km * (u1 - u2 + u3 - u4)
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from quadsim.errors import InfeasibleWrenchError
from quadsim.params import VehicleParams


class Wrench(NamedTuple):
    """Total thrust magnitude [N] and body torques [N m]."""

    thrust: float
    tau_x: float
    tau_y: float
    tau_z: float


def check_input(u) -> np.ndarray:
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape != (4,):
        raise ValueError(f"control input needs 4 squared rotor speeds, got {u.shape}")
    if not np.all(np.isfinite(u)):
        raise ValueError("control input must be finite")
    if np.any(u < 0):
        raise ValueError(f"squared rotor speeds must be >= 0, got {u.tolist()}")
    return u


def input_from_rotor_speeds(speeds) -> np.ndarray:
    """Square rotor speeds [rad/s] into a control input."""
    speeds = np.asarray(speeds, dtype=float).reshape(-1)
    if speeds.shape != (4,) or np.any(speeds < 0) or not np.all(np.isfinite(speeds)):
        raise ValueError(f"rotor speeds must be 4 finite non-negative values, got {speeds}")
    return speeds**2


def rotor_speeds_from_input(u) -> np.ndarray:
    return np.sqrt(check_input(u))


def wrench_from_input(u, params: VehicleParams) -> Wrench:
    """Forward mixing: squared rotor speeds to thrust and body torques."""
    u1, u2, u3, u4 = (float(v) for v in check_input(u))
    ka, km, l = params.ka, params.km, params.l
    return Wrench(
        ka * (u1 + u2 + u3 + u4),
        ka * l * (u4 - u2),
        ka * l * (u1 - u3),
        km * (u1 - u2 + u3 - u4),
    )


def mixing_matrix(params: VehicleParams) -> np.ndarray:
    """4x4 matrix ``M`` with ``[T, tau_x, tau_y, tau_z] = M @ u``."""
    ka, km, l = params.ka, params.km, params.l
    return np.array(
        [
            [ka, ka, ka, ka],
            [0.0, -ka * l, 0.0, ka * l],
            [ka * l, 0.0, -ka * l, 0.0],
            [km, -km, km, -km],
        ]
    )


def input_from_wrench(wrench, params: VehicleParams) -> np.ndarray:
    """Allocate a wrench to squared rotor speeds.

    Raises
    ------
    InfeasibleWrenchError
        If any rotor would need a negative squared speed.
    """
    thrust, tau_x, tau_y, tau_z = (float(v) for v in wrench)
    if not all(math.isfinite(v) for v in (thrust, tau_x, tau_y, tau_z)):
        raise ValueError("wrench components must be finite")
    if thrust < 0:
        raise ValueError(f"thrust must be >= 0, got {thrust}")
    ka, km, l = params.ka, params.km, params.l
    base = thrust / (4.0 * ka)
    roll = tau_x / (2.0 * ka * l)
    pitch = tau_y / (2.0 * ka * l)
    yaw = tau_z / (4.0 * km)
    u = np.array(
        [
            base + pitch + yaw,
            base - roll - yaw,
            base - pitch + yaw,
            base + roll - yaw,
        ]
    )
    # Cancellation can leave a rotor that should be exactly idle at -1e-20 or so.
    floor = -1e-12 * max(float(np.max(np.abs(u))), 1.0)
    for i, value in enumerate(u):
        if value < floor:
            raise InfeasibleWrenchError(i + 1, float(value))
    return np.maximum(u, 0.0)


def hover_input(params: VehicleParams) -> np.ndarray:
    """Equal rotor command whose thrust balances the weight.

    The nominal value is ``m*g / (4*ka)``. Neighbouring doubles are then
    searched for the command whose ``g - T/m`` is smallest, so that for most
    vehicles (the default one included) a level hover has an identically
    zero state derivative. Some parameter sets admit no exact balance in
    double precision; the residual is then one ulp of ``g``.
    """
    nominal = float(input_from_wrench(Wrench(params.m * params.g, 0.0, 0.0, 0.0), params)[0])

    def residual(value):
        return abs(params.g - wrench_from_input([value] * 4, params).thrust / params.m)

    best, best_res = nominal, residual(nominal)
    down = up = nominal
    for _ in range(64):
        if best_res == 0.0:
            break
        down = math.nextafter(down, 0.0)
        up = math.nextafter(up, math.inf)
        for candidate in (down, up):
            res = residual(candidate)
            if res < best_res:
                best, best_res = candidate, res
    return np.full(4, best)
