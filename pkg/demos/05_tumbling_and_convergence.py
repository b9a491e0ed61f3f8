"""Torque-free tumbling: conservation checks and integrator order."""
import numpy as np

from quadsim import InputSchedule, VehicleParams, make_state, simulate

params = VehicleParams()
x0 = make_state(rates=(1.0, 2.0, 3.0))
coast = InputSchedule.constant(np.zeros(4))

traj = simulate(x0, coast, 1e-4, 1.0, "rk4", params)
inertia = params.inertia.as_array()
w = traj.states[:, 9:12]
energy = 0.5 * np.sum(inertia * w**2, axis=1)
momentum = np.linalg.norm(inertia * w, axis=1)
print("relative energy drift:   ", np.max(np.abs(energy / energy[0] - 1)))
print("relative |I w| drift:    ", np.max(np.abs(momentum / momentum[0] - 1)))

reference = simulate(x0, coast, 0.005 / 16, 1.0, "rk4", params).final_state
for method, dts in (("rk4", [0.04, 0.02, 0.01, 0.005]), ("euler", [0.004, 0.002, 0.001, 0.0005])):
    errors = [np.max(np.abs(simulate(x0, coast, dt, 1.0, method, params).final_state - reference))
              for dt in dts]
    slope = np.polyfit(np.log(dts), np.log(errors), 1)[0]
    print(f"{method:5s} errors {np.array(errors)}  observed order {slope:.2f}")
