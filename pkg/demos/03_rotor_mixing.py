"""From squared rotor speeds to thrust and torques, and back."""
import numpy as np

from quadsim import VehicleParams, Wrench, hover_input, input_from_wrench, wrench_from_input
from quadsim.errors import InfeasibleWrenchError

params = VehicleParams()
u_hover = hover_input(params)
print("hover command (rad^2/s^2):", u_hover, " rotor speed:", np.sqrt(u_hover[0]).round(2), "rad/s")
print("hover wrench:", wrench_from_input(u_hover, params))

# Speeding up the 1-3 pair against 2-4 yaws without rolling or pitching.
print("\nyaw command:", wrench_from_input(u_hover + [1e4, 0, 1e4, 0], params))

# Allocation inverts the mixer for any wrench the rotors can produce.
wr = Wrench(params.m * params.g, 0.01, -0.02, 0.001)
u = input_from_wrench(wr, params)
print("\nallocated", wr, "->", u.round(1))
print("re-mixed:", wrench_from_input(u, params))

try:
    input_from_wrench(Wrench(1.0, 1.0, 0.0, 0.0), params)
except InfeasibleWrenchError as exc:
    print("\ntoo much roll torque:", exc)
