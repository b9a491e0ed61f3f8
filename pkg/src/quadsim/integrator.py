"""
Fixed-step explicit integration of the 12-state model.

Inputs are held constant over each step (zero-order hold). A simulation
that reaches a pitch where the Euler-rate map is singular stops there and
returns the samples produced so far.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from quadsim.dynamics import STATE_SIZE, check_attitude, check_state, state_derivative
from quadsim.errors import GimbalSingularityError, QuadsimError
from quadsim.params import VehicleParams
from quadsim.rotor_model import check_input

METHODS = ("euler", "rk4")


class SimulationSingularityError(QuadsimError):
    """Raised by :func:`simulate` in strict mode when dynamics reject a state."""

    def __init__(self, trajectory, cause):
        self.trajectory = trajectory
        self.last_t = trajectory.last_t
        super().__init__(f"singularity after t = {self.last_t!r} s: {cause}")


class InputSchedule:
    """Piecewise-constant control input.

    Parameters
    ----------
    segments : sequence of (t_start, u)
        Start times must begin at 0 and increase strictly; ``u`` holds the
        four squared rotor speeds applied from ``t_start`` on.
    """

    def __init__(self, segments):
        segments = list(segments)
        if not segments:
            raise ValueError("input schedule must have at least one segment")
        times, inputs = [], []
        for t_start, u in segments:
            t_start = float(t_start)
            if not math.isfinite(t_start):
                raise ValueError(f"schedule time must be finite, got {t_start!r}")
            if times and t_start <= times[-1]:
                raise ValueError(
                    f"schedule times must be strictly increasing ({t_start} after {times[-1]})"
                )
            times.append(t_start)
            inputs.append(check_input(u))
        if times[0] != 0.0:
            raise ValueError(f"schedule must start at t = 0, got {times[0]}")
        self.times = np.array(times)
        self.inputs = np.array(inputs)

    @classmethod
    def constant(cls, u):
        return cls([(0.0, u)])

    def __len__(self):
        return len(self.times)

    def __iter__(self):
        for t, u in zip(self.times, self.inputs):
            yield float(t), u.copy()

    def __eq__(self, other):
        if not isinstance(other, InputSchedule):
            return NotImplemented
        return np.array_equal(self.times, other.times) and np.array_equal(self.inputs, other.inputs)

    def __repr__(self):
        return f"InputSchedule({[(t, u.tolist()) for t, u in self]})"

    def at(self, t: float, slack: float = 0.0) -> np.ndarray:
        """Input active at time ``t``; switch times within ``slack`` count as reached."""
        idx = int(np.searchsorted(self.times, t + slack, side="right")) - 1
        return self.inputs[max(idx, 0)]


@dataclass
class Trajectory:
    """Recorded samples of a simulation.

    ``inputs[k]`` is the input applied over the step that starts at ``t[k]``
    (for the last sample, the input active at that time).
    """

    t: np.ndarray
    states: np.ndarray
    inputs: np.ndarray
    termination: str = "completed"
    message: Optional[str] = None

    def __len__(self):
        return len(self.t)

    @property
    def completed(self) -> bool:
        return self.termination == "completed"

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def last_t(self) -> float:
        return float(self.t[-1])

    @property
    def step_count(self) -> int:
        return len(self.t) - 1


def step_euler(state, u, dt: float, params: VehicleParams) -> np.ndarray:
    """One explicit Euler step."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    state = check_state(state)
    return state + dt * state_derivative(state, u, params)


def step_rk4(state, u, dt: float, params: VehicleParams) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step with ``u`` held fixed."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    state = check_state(state)
    k1 = state_derivative(state, u, params)
    k2 = state_derivative(state + 0.5 * dt * k1, u, params)
    k3 = state_derivative(state + 0.5 * dt * k2, u, params)
    k4 = state_derivative(state + dt * k3, u, params)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


_STEPPERS = {"euler": step_euler, "rk4": step_rk4}


def step_times(dt: float, duration: float) -> np.ndarray:
    """Sample times ``0, dt, 2 dt, ...`` ending exactly at ``duration``.

    When ``duration`` is a multiple of ``dt`` (up to rounding) there are
    ``round(duration/dt) + 1`` samples; otherwise a final shortened step is
    appended.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if not duration >= dt:
        raise ValueError(f"duration ({duration}) must be >= dt ({dt})")
    ratio = duration / dt
    n = round(ratio)
    if abs(ratio - n) <= 1e-9 * max(1.0, ratio):
        times = np.arange(n + 1) * dt
        times[-1] = duration
        return times
    n = math.floor(ratio)
    return np.append(np.arange(n + 1) * dt, duration)


def simulate(initial, schedule: InputSchedule, dt: float, duration: float,
             method: str = "rk4", params: Optional[VehicleParams] = None,
             strict: bool = False) -> Trajectory:
    """Integrate from ``t = 0`` to ``duration``.

    Parameters
    ----------
    initial : array_like, shape (12,)
    schedule : InputSchedule
    dt : float
        Nominal step [s].
    duration : float
        End time [s]; the last step is shortened to land on it exactly.
    method : {"euler", "rk4"}
    params : VehicleParams, optional
        Defaults to ``VehicleParams()``.
    strict : bool
        Raise :class:`SimulationSingularityError` instead of returning a
        partial trajectory flagged ``termination="singularity"``.
    """
    if method not in _STEPPERS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if not isinstance(schedule, InputSchedule):
        schedule = InputSchedule(schedule)
    params = params if params is not None else VehicleParams()
    step = _STEPPERS[method]
    times = step_times(dt, duration)
    slack = 1e-9 * dt

    states = np.empty((len(times), STATE_SIZE))
    inputs = np.empty((len(times), 4))
    states[0] = check_state(initial)
    inputs[0] = schedule.at(0.0)

    for k in range(1, len(times)):
        h = times[k] - times[k - 1]
        try:
            nxt = step(states[k - 1], inputs[k - 1], h, params)
            check_attitude(nxt)
        except GimbalSingularityError as exc:
            traj = Trajectory(times[:k].copy(), states[:k].copy(), inputs[:k].copy(),
                              "singularity", str(exc))
            if strict:
                raise SimulationSingularityError(traj, exc) from exc
            return traj
        states[k] = nxt
        inputs[k] = schedule.at(times[k], slack)

    return Trajectory(times, states, inputs)
