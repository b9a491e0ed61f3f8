"""Rotation matrices, rigid transforms and recovering Euler angles."""
import math

import numpy as np

from quadsim import RigidTransform, apply_transform, euler_from_rotation, is_rigid, rot_z, world_from_body

np.set_printoptions(precision=5, suppress=True)

# A Z-Y-X attitude: yaw first, then pitch, then roll.
angles = (0.1, 0.2, 0.3)
R = world_from_body(angles)
print("world_from_body(0.1, 0.2, 0.3) =\n", R)
print("R31 = -sin(pitch):", R[2, 0], -math.sin(0.2))

# A rigid transform rotates and then translates a point.
t = RigidTransform(rot_z(math.pi / 2), [1.0, 1.0, 0.0])
print("\nrot_z(pi/2) then +(1,1,0) applied to (1,0,0):", apply_transform(t, [1.0, 0.0, 0.0]))

# Rigidity: lengths, orthogonality and cross products must survive the map.
print("is_rigid(rotation):      ", is_rigid(RigidTransform(R)))
print("is_rigid(scaled by 2):   ", is_rigid(RigidTransform(2 * R)))
mirror = R.copy()
mirror[:, 2] *= -1
print("is_rigid(reflection):    ", is_rigid(RigidTransform(mirror)))

# Two Euler triplets reproduce the same matrix away from pitch = +-pi/2.
sol = euler_from_rotation(R)
print("\nprimary solution:  ", np.array(sol.primary))
print("secondary solution:", np.array(sol.secondary))
for s in sol.solutions():
    print("  reconstruction error:", np.max(np.abs(world_from_body(s) - R)))

# At pitch = pi/2 roll and yaw collapse into one degree of freedom.
locked = world_from_body((0.3, math.pi / 2, 0.7))
sol = euler_from_rotation(locked)
print("\ngimbal locked:", sol.gimbal_locked, "solution:", np.array(sol.primary))
print("  roll carries roll - yaw = -0.4; reconstruction error:",
      np.max(np.abs(world_from_body(sol.primary) - locked)))
