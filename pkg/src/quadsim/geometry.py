"""
Rotations, rigid transforms and ZYX Euler-angle extraction.

Conventions
-----------
Column vectors throughout: ``v_world = R @ v_body``. The single-axis
matrices returned by :func:`rot_x`, :func:`rot_y` and :func:`rot_z` are the
usual active rotations for that convention.

Euler angles are roll (phi), pitch (theta) and yaw (psi) of a Z-Y-X
sequence, so that::

    R_wb = rot_z(psi) @ rot_y(theta) @ rot_x(phi)

    [[ cθcψ,  sφsθcψ - cφsψ,  sφsψ + cφcψsθ ],
     [ cθsψ,  cφcψ + sθsφsψ,  cφsθsψ - cψsφ ],
     [ -sθ,   cθsφ,           cθcφ          ]]
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from quadsim.errors import InvalidRotationError

#: Band on ``1 - |R31|`` inside which the attitude is treated as gimbal locked.
GIMBAL_LOCK_EPS = 1e-9

#: Tolerance on orthonormality/determinant when validating input rotations.
ROTATION_CHECK_TOL = 1e-6


class EulerAngles(NamedTuple):
    """ZYX Euler angles in radians."""

    roll: float
    pitch: float
    yaw: float


@dataclass(frozen=True)
class EulerSolutions:
    """Result of :func:`euler_from_rotation`.

    ``secondary`` is ``None`` exactly when ``gimbal_locked`` is set.
    """

    primary: EulerAngles
    secondary: Optional[EulerAngles]
    gimbal_locked: bool

    def solutions(self):
        if self.secondary is None:
            return [self.primary]
        return [self.primary, self.secondary]


@dataclass(frozen=True)
class RigidTransform:
    """Rotation followed by translation, ``p -> R @ p + t``."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        rot = np.array(self.rotation, dtype=float)
        trans = np.array(self.translation, dtype=float).reshape(-1)
        if rot.shape != (3, 3):
            raise ValueError(f"rotation must be 3x3, got shape {rot.shape}")
        if trans.shape != (3,):
            raise ValueError(f"translation must have 3 components, got {trans.shape}")
        if not (np.all(np.isfinite(rot)) and np.all(np.isfinite(trans))):
            raise ValueError("transform entries must be finite")
        rot.setflags(write=False)
        trans.setflags(write=False)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", trans)


def wrap_angle(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


# =============================================================================
# Single-axis rotations
# =============================================================================


def rot_x(beta: float) -> np.ndarray:
    """Rotation by ``beta`` about the x axis."""
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(beta: float) -> np.ndarray:
    """Rotation by ``beta`` about the y axis."""
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(beta: float) -> np.ndarray:
    """Rotation by ``beta`` about the z axis."""
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


# =============================================================================
# Body <-> world
# =============================================================================


def world_from_body(angles) -> np.ndarray:
    """Direction cosine matrix mapping body-frame vectors into the world frame.

    Parameters
    ----------
    angles : EulerAngles or sequence of 3 floats
        (roll, pitch, yaw) in radians.

    Returns
    -------
    np.ndarray
        3x3 matrix ``R`` with ``v_world = R @ v_body``.
    """
    phi, theta, psi = angles
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, sth = math.cos(theta), math.sin(theta)
    cpsi, spsi = math.cos(psi), math.sin(psi)
    return np.array(
        [
            [cth * cpsi, cpsi * sth * sphi - cphi * spsi, sphi * spsi + cphi * cpsi * sth],
            [cth * spsi, cphi * cpsi + sth * sphi * spsi, cphi * sth * spsi - cpsi * sphi],
            [-sth, cth * sphi, cth * cphi],
        ]
    )


def body_from_world(angles) -> np.ndarray:
    """Inverse (transpose) of :func:`world_from_body`."""
    return world_from_body(angles).T.copy()


# =============================================================================
# Rigid transforms
# =============================================================================


def apply_transform(transform: RigidTransform, point) -> np.ndarray:
    """Map a point through ``transform``: ``R @ p + t``."""
    return transform.rotation @ np.asarray(point, dtype=float) + transform.translation


# Fixed probe set for the rigidity check: axes plus a few generic directions.
_PROBES = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 2.0, 3.0],
        [-0.7, 0.2, 1.3],
        [0.3, -1.1, -0.4],
    ]
)


def is_rigid(transform: RigidTransform, tol: float = 1e-9) -> bool:
    """Check that a transform is a proper rigid motion.

    Three conditions are tested, each to within ``tol``:

    - the rotation columns are mutually orthogonal unit vectors,
    - distances between transformed probe points are preserved,
    - cross products commute with the map, ``g(V) x g(W) == g(V x W)``.

    A reflection passes the first two but fails the third.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    rot = transform.rotation

    gram = rot.T @ rot
    if np.max(np.abs(gram - np.eye(3))) > tol:
        return False

    mapped = np.array([apply_transform(transform, p) for p in _PROBES])
    n = len(_PROBES)
    for i in range(n):
        for j in range(i + 1, n):
            before = np.linalg.norm(_PROBES[i] - _PROBES[j])
            after = np.linalg.norm(mapped[i] - mapped[j])
            if abs(after - before) > tol * max(1.0, before):
                return False

    for i in range(n):
        for j in range(i + 1, n):
            v, w = _PROBES[i], _PROBES[j]
            lhs = np.cross(rot @ v, rot @ w)
            rhs = rot @ np.cross(v, w)
            scale = max(1.0, np.linalg.norm(v) * np.linalg.norm(w))
            if np.max(np.abs(lhs - rhs)) > tol * scale:
                return False
    return True


# =============================================================================
# Euler extraction
# =============================================================================


def check_rotation(rot, tol: float = ROTATION_CHECK_TOL) -> np.ndarray:
    """Return ``rot`` as a float array, raising if it is not a proper rotation."""
    rot = np.asarray(rot, dtype=float)
    if rot.shape != (3, 3):
        raise InvalidRotationError(f"expected a 3x3 matrix, got shape {rot.shape}")
    if not np.all(np.isfinite(rot)):
        raise InvalidRotationError("rotation matrix has non-finite entries")
    err = np.max(np.abs(rot @ rot.T - np.eye(3)))
    if err > tol:
        raise InvalidRotationError(f"matrix is not orthonormal (max |R R^T - I| = {err:.3g})")
    det = np.linalg.det(rot)
    if abs(det - 1.0) > tol:
        raise InvalidRotationError(f"matrix determinant is {det:.6g}, expected +1")
    return rot


def _triplet(rot: np.ndarray, theta: float) -> EulerAngles:
    # Dividing by cos(theta) keeps the atan2 quadrant right for either pitch branch.
    c = math.cos(theta)
    phi = math.atan2(rot[2, 1] / c, rot[2, 2] / c)
    psi = math.atan2(rot[1, 0] / c, rot[0, 0] / c)
    return EulerAngles(wrap_angle(phi), wrap_angle(theta), wrap_angle(psi))


def euler_from_rotation(rot, eps: float = GIMBAL_LOCK_EPS) -> EulerSolutions:
    """Recover ZYX Euler angles from a world-from-body rotation matrix.

    Away from the singular pitch two triplets reproduce ``rot``: pitch
    ``-asin(R31)`` and its supplement ``pi + asin(R31)``. When
    ``|R31| >= 1 - eps`` roll and yaw are no longer separable; yaw is fixed
    to zero and the single solution carries ``gimbal_locked=True``.

    Raises
    ------
    InvalidRotationError
        If ``rot`` is not orthonormal with determinant +1 to within 1e-6.
    """
    rot = check_rotation(rot)
    r31 = rot[2, 0]

    if abs(r31) < 1.0 - eps:
        theta1 = -math.asin(r31)
        theta2 = math.pi - theta1
        return EulerSolutions(_triplet(rot, theta1), _triplet(rot, theta2), False)

    # Locked: with psi = 0 the collapsed matrix gives R22 = cos(phi), R23 = -sin(phi)
    # for either sign of R31.
    theta = -math.asin(max(-1.0, min(1.0, r31)))
    phi = math.atan2(-rot[1, 2], rot[1, 1])
    return EulerSolutions(EulerAngles(wrap_angle(phi), theta, 0.0), None, True)
