"""
Scenario files, built-in presets and the batch runner behind ``quadsim run``.

A scenario is a single JSON object::

    {
      "params":   {"m": 0.5, "ixx": 5e-3, ...},        # optional, per key
      "initial":  [x, y, z, phi, theta, psi, xd, yd, zd, p, q, r],  # optional
      "schedule": [{"t": 0.0, "u": [u1, u2, u3, u4]}, ...],
      "preset":   "hover",                             # instead of schedule
      "sim":      {"dt": 0.001, "duration": 5.0, "method": "rk4"}
    }

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from quadsim.dynamics import STATE_NAMES, STATE_SIZE
from quadsim.errors import ScenarioError
from quadsim.integrator import METHODS, InputSchedule, Trajectory, simulate
from quadsim.params import VehicleParams
from quadsim.rotor_model import Wrench, hover_input, input_from_wrench

CSV_COLUMNS = ("t",) + STATE_NAMES + ("u1", "u2", "u3", "u4")
CSV_HEADER = ",".join(CSV_COLUMNS)

PRESETS = ("hover", "free_fall", "yaw_step", "forward_flight")

FORWARD_FLIGHT_PITCH = 0.2
YAW_STEP_TORQUE = 2.0e-3
YAW_STEP_START = 1.0
YAW_STEP_END = 1.5

_TOP_KEYS = {"params", "initial", "schedule", "preset", "sim"}
_SIM_KEYS = {"dt", "duration", "method"}
_PARAM_KEYS = tuple(f.name for f in fields(VehicleParams))

DEFAULT_DT = 1e-3
DEFAULT_METHOD = "rk4"
_PRESET_DURATION = {"hover": 5.0, "free_fall": 1.0, "yaw_step": 3.0, "forward_flight": 2.0}


@dataclass(frozen=True)
class Scenario:
    params: VehicleParams = field(default_factory=VehicleParams)
    initial: np.ndarray = field(default_factory=lambda: np.zeros(STATE_SIZE))
    schedule: Optional[InputSchedule] = None
    preset: Optional[str] = None
    dt: float = DEFAULT_DT
    duration: float = 1.0
    method: str = DEFAULT_METHOD

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            self.params == other.params
            and np.array_equal(self.initial, other.initial)
            and self.schedule == other.schedule
            and self.preset == other.preset
            and (self.dt, self.duration, self.method) == (other.dt, other.duration, other.method)
        )


@dataclass
class RunSummary:
    final_state: np.ndarray
    wall_clock: float
    step_count: int
    termination: str
    max_abs_theta: float
    message: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "final_state": dict(zip(STATE_NAMES, (float(v) for v in self.final_state))),
            "wall_clock": self.wall_clock,
            "step_count": self.step_count,
            "termination": self.termination,
            "max_abs_theta": self.max_abs_theta,
            "message": self.message,
        }


# =============================================================================
# Presets
# =============================================================================


def preset_initial(name: str) -> np.ndarray:
    initial = np.zeros(STATE_SIZE)
    if name == "forward_flight":
        initial[4] = FORWARD_FLIGHT_PITCH
    return initial


def preset_schedule(name: str, params: VehicleParams) -> InputSchedule:
    """Input schedule for a named preset, allocated through the mixer."""
    weight = params.m * params.g
    if name == "hover":
        return InputSchedule.constant(hover_input(params))
    if name == "free_fall":
        return InputSchedule.constant(np.zeros(4))
    if name == "yaw_step":
        hover = hover_input(params)
        turn = input_from_wrench(Wrench(weight, 0.0, 0.0, YAW_STEP_TORQUE), params)
        return InputSchedule([(0.0, hover), (YAW_STEP_START, turn), (YAW_STEP_END, hover)])
    if name == "forward_flight":
        trim = Wrench(weight / math.cos(FORWARD_FLIGHT_PITCH), 0.0, 0.0, 0.0)
        return InputSchedule.constant(input_from_wrench(trim, params))
    raise ScenarioError(f"preset: unknown preset {name!r}; expected one of {PRESETS}")


def preset_scenario(name: str, params: Optional[VehicleParams] = None) -> Scenario:
    if name not in PRESETS:
        raise ScenarioError(f"preset: unknown preset {name!r}; expected one of {PRESETS}")
    params = params or VehicleParams()
    return Scenario(
        params=params,
        initial=preset_initial(name),
        schedule=preset_schedule(name, params),
        preset=name,
        dt=DEFAULT_DT,
        duration=_PRESET_DURATION[name],
        method=DEFAULT_METHOD,
    )


# =============================================================================
# Parsing
# =============================================================================


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioError(f"{where}: must be finite, got {value!r}")
    return value


def _object(value, where, allowed):
    if not isinstance(value, dict):
        raise ScenarioError(f"{where}: expected an object, got {type(value).__name__}")
    unknown = sorted(set(value) - set(allowed))
    if unknown:
        raise ScenarioError(f"{where}: unknown key(s) {unknown}; allowed {sorted(allowed)}")
    return value


def _numbers(value, where, n):
    if not isinstance(value, list) or len(value) != n:
        raise ScenarioError(f"{where}: expected a list of {n} numbers, got {value!r}")
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(value)]


def scenario_from_dict(doc) -> Scenario:
    """Build and validate a :class:`Scenario` from a decoded JSON document."""
    doc = _object(doc, "scenario", _TOP_KEYS)

    raw_params = _object(doc.get("params", {}), "params", _PARAM_KEYS)
    values = {k: _number(v, f"params.{k}") for k, v in raw_params.items()}
    try:
        params = VehicleParams(**values)
    except ValueError as exc:
        raise ScenarioError(f"params: {exc}") from exc

    preset = doc.get("preset")
    if "schedule" in doc and preset is not None:
        raise ScenarioError("scenario: give either 'schedule' or 'preset', not both")
    if "schedule" not in doc and preset is None:
        raise ScenarioError("scenario: one of 'schedule' or 'preset' is required")

    if preset is not None:
        if preset not in PRESETS:
            raise ScenarioError(f"preset: unknown preset {preset!r}; expected one of {PRESETS}")
        try:
            schedule = preset_schedule(preset, params)
        except ValueError as exc:
            raise ScenarioError(f"preset: {preset!r} is infeasible for these params: {exc}") from exc
        initial = preset_initial(preset)
    else:
        raw = doc["schedule"]
        if not isinstance(raw, list) or not raw:
            raise ScenarioError("schedule: expected a non-empty list of {t, u} entries")
        segments = []
        for i, entry in enumerate(raw):
            entry = _object(entry, f"schedule[{i}]", {"t", "u"})
            if "t" not in entry or "u" not in entry:
                raise ScenarioError(f"schedule[{i}]: both 't' and 'u' are required")
            segments.append((_number(entry["t"], f"schedule[{i}].t"),
                             _numbers(entry["u"], f"schedule[{i}].u", 4)))
        try:
            schedule = InputSchedule(segments)
        except ValueError as exc:
            raise ScenarioError(f"schedule: {exc}") from exc
        initial = np.zeros(STATE_SIZE)

    if "initial" in doc:
        initial = np.array(_numbers(doc["initial"], "initial", STATE_SIZE))

    sim = _object(doc.get("sim", {}), "sim", _SIM_KEYS)
    dt = _number(sim["dt"], "sim.dt") if "dt" in sim else DEFAULT_DT
    if "duration" in sim:
        duration = _number(sim["duration"], "sim.duration")
    elif preset is not None:
        duration = _PRESET_DURATION[preset]
    else:
        raise ScenarioError("sim.duration: required when no preset is given")
    method = sim.get("method", DEFAULT_METHOD)

    scenario = Scenario(params, initial, schedule, preset, dt, duration, method)
    validate(scenario)
    return scenario


def validate(scenario: Scenario) -> Scenario:
    """Check the simulation settings of an already-built scenario."""
    if not scenario.dt > 0:
        raise ScenarioError(f"sim.dt: dt must be > 0 (got {scenario.dt!r})")
    if not scenario.duration >= scenario.dt:
        raise ScenarioError(
            f"sim.duration: duration must be >= dt (got {scenario.duration!r} < {scenario.dt!r})"
        )
    if scenario.method not in METHODS:
        raise ScenarioError(f"sim.method: expected one of {METHODS}, got {scenario.method!r}")
    if scenario.schedule is None:
        raise ScenarioError("schedule: missing")
    return scenario


def load_scenario(path) -> Scenario:
    """Read, default and validate a scenario file.

    Raises
    ------
    ScenarioError
        On malformed JSON (with line and column) or a schema/physics violation.
    OSError
        If the file cannot be read.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    return scenario_from_dict(doc)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Inverse of :func:`scenario_from_dict`."""
    doc = {
        "params": scenario.params.to_dict(),
        "initial": [float(v) for v in scenario.initial],
    }
    if scenario.preset is not None:
        doc["preset"] = scenario.preset
    else:
        doc["schedule"] = [{"t": t, "u": u.tolist()} for t, u in scenario.schedule]
    doc["sim"] = {"dt": scenario.dt, "duration": scenario.duration, "method": scenario.method}
    return doc


def dump_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n", encoding="utf-8")


def with_overrides(scenario: Scenario, dt=None, duration=None, method=None) -> Scenario:
    changes = {k: v for k, v in (("dt", dt), ("duration", duration), ("method", method))
               if v is not None}
    return validate(replace(scenario, **changes))


# =============================================================================
# Running
# =============================================================================


def _fmt(value: float) -> str:
    return format(float(value), ".16e")


def write_csv(trajectory: Trajectory, path) -> None:
    """Write one row per sample: time, the 12 states, the 4 inputs."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for t, state, u in zip(trajectory.t, trajectory.states, trajectory.inputs):
            fh.write(",".join([_fmt(t), *map(_fmt, state), *map(_fmt, u)]) + "\n")


def read_csv(path) -> np.ndarray:
    """Load a trajectory CSV back into an ``(n, 17)`` array."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        return np.loadtxt(fh, delimiter=",", ndmin=2)


def simulate_scenario(scenario: Scenario) -> Trajectory:
    return simulate(scenario.initial, scenario.schedule, scenario.dt, scenario.duration,
                    scenario.method, scenario.params)


def run(scenario: Scenario, out_path) -> RunSummary:
    """Simulate ``scenario``, write the trajectory CSV and summarise the run.

    A singularity stops the simulation early; the partial trajectory is
    still written and ``termination`` is ``"singularity"``.
    """
    validate(scenario)
    start = time.perf_counter()
    traj = simulate_scenario(scenario)
    elapsed = time.perf_counter() - start
    write_csv(traj, out_path)
    return RunSummary(
        final_state=traj.final_state.copy(),
        wall_clock=elapsed,
        step_count=traj.step_count,
        termination=traj.termination,
        max_abs_theta=float(np.max(np.abs(traj.states[:, 4]))),
        message=traj.message,
    )
