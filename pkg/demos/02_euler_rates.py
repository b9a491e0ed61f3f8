"""Body angular rates versus Euler-angle rates, and the pitch singularity."""
import math

import numpy as np

from quadsim import GimbalSingularityError, body_rates_from_euler_rates, euler_rates_from_body_rates

np.set_printoptions(precision=6, suppress=True)

rates = (0.0, 0.0, 1.0)  # pure body yaw rate, rad/s
print("body rates (p, q, r) =", rates)
for pitch_deg in (0, 30, 60, 80, 89, 89.9):
    angles = (0.4, math.radians(pitch_deg), 0.0)
    e = euler_rates_from_body_rates(angles, rates)
    print(f"  pitch {pitch_deg:5.1f} deg -> Euler rates {np.array(e)}")

# The forward map is always defined but loses rank at the vertical.
print("\nat pitch = 90 deg, Euler rates (1, 0, 1) give body rates",
      np.array(body_rates_from_euler_rates((0.0, math.pi / 2, 0.0), (1.0, 0.0, 1.0))))

try:
    euler_rates_from_body_rates((0.0, math.pi / 2, 0.0), rates)
except GimbalSingularityError as exc:
    print("inverse map at the vertical:", exc)
