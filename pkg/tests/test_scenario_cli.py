"""Scenario parsing, CSV output and the ``quadsim`` command line."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from quadsim.cli import main
from quadsim.errors import ScenarioError
from quadsim.params import VehicleParams
from quadsim.rotor_model import hover_input, wrench_from_input
from quadsim.scenario import (
    CSV_HEADER,
    PRESETS,
    Scenario,
    load_scenario,
    preset_scenario,
    read_csv,
    run,
    scenario_from_dict,
    scenario_to_dict,
    with_overrides,
)

EXPECTED_HEADER = "t,x,y,z,phi,theta,psi,xd,yd,zd,p,q,r,u1,u2,u3,u4"


def write_json(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestLoadScenario:
    def test_minimal_hover(self, tmp_path):
        path = write_json(tmp_path / "s.json", {"preset": "hover", "sim": {"dt": 0.001, "duration": 5.0}})
        sc = load_scenario(path)
        assert sc.params == VehicleParams()
        assert sc.preset == "hover"
        assert np.all(sc.initial == 0.0)
        assert len(sc.schedule) == 1
        np.testing.assert_array_equal(sc.schedule.inputs[0], hover_input(sc.params))
        assert (sc.dt, sc.duration, sc.method) == (0.001, 5.0, "rk4")

    def test_negative_mass(self, tmp_path):
        path = write_json(tmp_path / "s.json", {"preset": "hover", "params": {"m": -1}})
        with pytest.raises(ScenarioError, match="m must be > 0"):
            load_scenario(path)

    def test_explicit_schedule_echoed(self, tmp_path):
        initial = [0.1 * i for i in range(12)]
        initial[4] = 0.25
        doc = {
            "params": {"m": 0.8, "ka": 4e-6},
            "initial": initial,
            "schedule": [{"t": 0.0, "u": [1e5, 2e5, 3e5, 4e5]}, {"t": 0.75, "u": [0, 0, 0, 0]}],
            "sim": {"dt": 0.002, "duration": 1.5, "method": "euler"},
        }
        sc = load_scenario(write_json(tmp_path / "s.json", doc))
        assert sc.params.m == 0.8 and sc.params.ka == 4e-6 and sc.params.l == 0.25
        np.testing.assert_array_equal(sc.initial, initial)
        np.testing.assert_array_equal(sc.schedule.times, [0.0, 0.75])
        np.testing.assert_array_equal(sc.schedule.inputs, [[1e5, 2e5, 3e5, 4e5], [0, 0, 0, 0]])
        assert (sc.dt, sc.duration, sc.method) == (0.002, 1.5, "euler")
        out = scenario_to_dict(sc)
        assert out["initial"] == initial and out["schedule"] == doc["schedule"]
        assert out["sim"] == doc["sim"]

    @pytest.mark.parametrize("name", PRESETS)
    def test_round_trip_idempotent(self, name):
        doc = scenario_to_dict(preset_scenario(name))
        once = scenario_from_dict(json.loads(json.dumps(doc)))
        twice = scenario_from_dict(json.loads(json.dumps(scenario_to_dict(once))))
        assert once == twice == preset_scenario(name)
        assert scenario_to_dict(twice) == doc

    @pytest.mark.parametrize(
        "doc, match",
        [
            ({"preset": "hover", "extra": 1}, "unknown key"),
            ({"preset": "hover", "params": {"mass": 1}}, "unknown key"),
            ({"preset": "hover", "sim": {"dt": 0.001, "steps": 3}}, "unknown key"),
            ({"preset": "loop"}, "unknown preset"),
            ({}, "required"),
            ({"preset": "hover", "schedule": [{"t": 0, "u": [0, 0, 0, 0]}]}, "not both"),
            ({"schedule": [{"t": 0, "u": [0, 0, 0, 0]}]}, "duration"),
            ({"schedule": [{"t": 0, "u": [0, 0, 0]}], "sim": {"duration": 1}}, "schedule"),
            ({"schedule": [{"t": 0.5, "u": [0, 0, 0, 0]}], "sim": {"duration": 1}}, "t = 0"),
            ({"schedule": [{"t": 0, "u": [0, 0, 0, -1]}], "sim": {"duration": 1}}, ">= 0"),
            ({"schedule": [{"t": 0, "u": [0, 0, 0, 0], "x": 1}], "sim": {"duration": 1}}, "unknown key"),
            ({"preset": "hover", "initial": [0] * 11}, "12 numbers"),
            ({"preset": "hover", "initial": [True] + [0] * 11}, "expected a number"),
            ({"preset": "hover", "sim": {"dt": 0}}, "dt must be > 0"),
            ({"preset": "hover", "sim": {"dt": 0.1, "duration": 0.05}}, "duration must be >= dt"),
            ({"preset": "hover", "sim": {"method": "rk45"}}, "sim.method"),
            ({"preset": "hover", "params": {"izz": 1.0}}, "triangle"),
            ([1, 2], "expected an object"),
        ],
    )
    def test_validation_errors(self, doc, match):
        with pytest.raises(ScenarioError, match=match):
            scenario_from_dict(doc)

    def test_parse_error_has_location(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "preset": "hover",\n  "sim": {dt: 1}\n}\n', encoding="utf-8")
        with pytest.raises(ScenarioError, match=r"broken.json:3:\d+"):
            load_scenario(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_scenario(tmp_path / "nope.json")

    def test_overrides(self):
        sc = with_overrides(preset_scenario("hover"), dt=0.01, method="euler")
        assert (sc.dt, sc.duration, sc.method) == (0.01, 5.0, "euler")
        with pytest.raises(ScenarioError):
            with_overrides(sc, duration=0.001)


class TestPresets:
    def test_trim_inputs_go_through_mixer(self):
        params = VehicleParams()
        ff = preset_scenario("forward_flight", params)
        wr = wrench_from_input(ff.schedule.inputs[0], params)
        assert wr.thrust == pytest.approx(params.m * params.g / math.cos(0.2), rel=1e-14)
        assert wr.tau_x == wr.tau_y == wr.tau_z == 0.0
        assert ff.initial[4] == 0.2

    def test_yaw_step(self):
        params = VehicleParams()
        sc = preset_scenario("yaw_step", params)
        torques = [wrench_from_input(u, params) for _, u in sc.schedule]
        assert torques[0].tau_z == 0.0 and torques[1].tau_z == pytest.approx(2e-3, rel=1e-9)
        assert all(w.tau_x == 0 and w.tau_y == 0 for w in torques)

    def test_scenario_equality(self):
        assert preset_scenario("hover") == preset_scenario("hover")
        assert preset_scenario("hover") != preset_scenario("free_fall")
        assert Scenario() != 3


class TestRun:
    def test_hover_csv(self, tmp_path):
        out = tmp_path / "hover.csv"
        summary = run(preset_scenario("hover"), out)
        data = read_csv(out)
        assert data.shape == (5001, 17)
        np.testing.assert_array_equal(data[0, 1:13], data[-1, 1:13])
        assert summary.termination == "completed" and summary.step_count == 5000
        assert summary.max_abs_theta == 0.0

    def test_free_fall_csv(self, tmp_path):
        out = tmp_path / "ff.csv"
        run(preset_scenario("free_fall"), out)
        data = read_csv(out)
        assert data[-1, 0] == 1.0
        assert data[-1, 3] == pytest.approx(4.905, abs=1e-9)

    def test_forward_flight_csv(self, tmp_path):
        out = tmp_path / "fwd.csv"
        run(preset_scenario("forward_flight"), out)
        data = read_csv(out)
        t, x, z = data[:, 0], data[:, 1], data[:, 3]
        assert np.max(np.abs(z)) < 1e-3
        np.testing.assert_allclose(np.abs(x[1:]), 0.5 * 9.81 * math.tan(0.2) * t[1:] ** 2, rtol=1e-9)

    def test_yaw_step_turns(self, tmp_path):
        out = tmp_path / "yaw.csv"
        summary = run(preset_scenario("yaw_step"), out)
        assert summary.termination == "completed"
        data = read_csv(out)
        assert abs(data[-1, 6]) > 0.01
        assert data[-1, 12] == pytest.approx(2e-3 * 0.5 / 9e-3, rel=1e-6)
        assert np.max(np.abs(data[:, 3])) < 1e-9

    def test_csv_format(self, tmp_path):
        out = tmp_path / "f.csv"
        run(with_overrides(preset_scenario("free_fall"), duration=0.01), out)
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").split("\n")
        assert lines[0] == EXPECTED_HEADER == CSV_HEADER
        assert lines[-1] == ""
        first = lines[1].split(",")
        assert len(first) == 17
        assert all(len(v.lstrip("-").split("e")[0]) == 18 for v in first)


class TestCli:
    def test_run_hover(self, tmp_path, capsys):
        scen = write_json(tmp_path / "h.json", {"preset": "hover", "sim": {"dt": 0.01, "duration": 1.0}})
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["run", "--scenario", str(scen), "--out", str(out1)]) == 0
        assert main(["run", "--scenario", str(scen), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        lines = out1.read_text().splitlines()
        assert lines[0] == EXPECTED_HEADER and len(lines) == 1 + 101
        summary = json.loads(capsys.readouterr().out.splitlines()[0])
        assert summary["termination"] == "completed" and summary["step_count"] == 100

    def test_flag_overrides(self, tmp_path):
        scen = write_json(tmp_path / "h.json", {"preset": "free_fall"})
        out = tmp_path / "o.csv"
        assert main(["run", "--scenario", str(scen), "--out", str(out),
                     "--dt", "0.05", "--duration", "0.5", "--method", "euler"]) == 0
        assert len(read_csv(out)) == 11

    def test_invalid_scenario(self, tmp_path):
        scen = write_json(tmp_path / "bad.json", {"preset": "hover", "params": {"m": -1}})
        assert main(["validate", "--scenario", str(scen)]) == 2
        assert main(["run", "--scenario", str(scen), "--out", str(tmp_path / "x.csv")]) == 2
        assert not (tmp_path / "x.csv").exists()

    def test_singularity(self, tmp_path):
        scen = write_json(tmp_path / "flip.json", {
            "schedule": [{"t": 0.0, "u": [8e5, 4e5, 0, 4e5]}],
            "sim": {"dt": 0.001, "duration": 1.0},
        })
        out = tmp_path / "flip.csv"
        assert main(["run", "--scenario", str(scen), "--out", str(out)]) == 3
        data = read_csv(out)
        assert 1 < len(data) < 1001
        assert np.all(np.abs(data[:, 5]) < math.pi / 2)

    def test_io_errors(self, tmp_path):
        assert main(["validate", "--scenario", str(tmp_path / "missing.json")]) == 4
        scen = write_json(tmp_path / "h.json", {"preset": "hover", "sim": {"dt": 0.1, "duration": 0.2}})
        assert main(["run", "--scenario", str(scen), "--out", str(tmp_path / "no" / "dir.csv")]) == 4

    def test_preset_then_validate(self, tmp_path, capsys):
        for name in PRESETS:
            path = tmp_path / f"{name}.json"
            assert main(["preset", "--name", name, "--out", str(path)]) == 0
            assert main(["validate", "--scenario", str(path)]) == 0
            assert load_scenario(path) == preset_scenario(name)

    def test_module_entry_point(self, tmp_path):
        scen = write_json(tmp_path / "h.json", {"preset": "hover"})
        proc = subprocess.run([sys.executable, "-m", "quadsim", "validate", "--scenario", str(scen)],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "ok" in proc.stdout
