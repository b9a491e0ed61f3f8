"""Hover, free fall and pitched forward flight through the batch runner."""
import math
import tempfile
from pathlib import Path

from quadsim.scenario import preset_scenario, read_csv, run

out_dir = Path(tempfile.mkdtemp())
for name in ("hover", "free_fall", "forward_flight", "yaw_step"):
    scenario = preset_scenario(name)
    summary = run(scenario, out_dir / f"{name}.csv")
    data = read_csv(out_dir / f"{name}.csv")
    x, z, psi = data[-1, 1], data[-1, 3], data[-1, 6]
    print(f"{name:15s} {summary.termination:9s} steps={summary.step_count:5d} "
          f"x={x:+.6f} z={z:+.6f} yaw={psi:+.6f}")

# Tilting by theta at thrust m g / cos(theta) keeps altitude and
# accelerates horizontally at g tan(theta).
theta = 0.2
data = read_csv(out_dir / "forward_flight.csv")
t_end = data[-1, 0]
print(f"\nforward flight after {t_end} s: |x| = {abs(data[-1, 1]):.6f} m, "
      f"closed form {0.5 * 9.81 * math.tan(theta) * t_end ** 2:.6f} m")
print("CSV files in", out_dir)
