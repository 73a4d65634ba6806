"""Quadrotor translational models with a lumped external-force state.

The prediction models live in the world frame: thrust is the only body
force and gets rotated by the attitude, gravity acts along -z, and every
unmodeled effect (ceiling suction, drag, parameter error) is absorbed by
a constant-disturbance external force.  Two variants are provided:

* :class:`AugmentedDynamics` -- 9 states ``[x y z u v w fx fy fz]`` with
  the external force as a random-walk state (used by the estimator).
* :class:`TranslationalDynamics` -- 6 states ``[x y z u v w]`` with the
  external force held as a fixed parameter (used by the controller).

Both are affine in the state for a fixed input, which the optimization
layers exploit implicitly; all model methods broadcast over leading
batch dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# augmented state layout
POS = slice(0, 3)
VEL = slice(3, 6)
F_EXT = slice(6, 9)
NX_AUG = 9
NX_TRANS = 6
NU = 4
NY = 10


@dataclass
class VehicleParams:
    """Physical parameters (SI units).

    Defaults describe an F450-class quadrotor with a companion computer.
    ``rotor_radius`` only enters proximity reporting and the ceiling
    model, never the flight dynamics.
    """

    mass: float = 1.2                 # kg
    gravity: float = 9.81             # m/s^2
    rotor_radius: float = 0.12        # m
    arm_length: float = 0.225         # m, rotor hub to center
    thrust_coeff: float = 1.2e-5      # N s^2, thrust = k_T * omega^2
    drag_torque_coeff: float = 2.0e-7  # N m s^2

    def __post_init__(self):
        for name in ("mass", "gravity", "rotor_radius", "arm_length",
                     "thrust_coeff", "drag_torque_coeff"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def hover_force(self) -> float:
        """Total vertical body force that balances gravity [N]."""
        return self.mass * self.gravity


@dataclass
class AugmentedState:
    """Position, velocity and lumped external force, world frame."""

    position: np.ndarray      # m, shape (3,)
    velocity: np.ndarray      # m/s, shape (3,)
    f_ext: np.ndarray         # N, shape (3,)

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.velocity = np.asarray(self.velocity, dtype=float)
        self.f_ext = np.asarray(self.f_ext, dtype=float)

    @classmethod
    def from_vector(cls, vec) -> "AugmentedState":
        vec = np.asarray(vec, dtype=float)
        return cls(vec[POS].copy(), vec[VEL].copy(), vec[F_EXT].copy())

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.position, self.velocity, self.f_ext])


@dataclass
class ControlInput:
    """Flat-output input: vertical body force plus attitude angles."""

    f_z: float                # N
    roll: float = 0.0         # rad
    pitch: float = 0.0        # rad
    yaw: float = 0.0          # rad

    @classmethod
    def from_vector(cls, vec) -> "ControlInput":
        vec = np.asarray(vec, dtype=float)
        return cls(float(vec[0]), float(vec[1]), float(vec[2]), float(vec[3]))

    @classmethod
    def hover(cls, params: VehicleParams, yaw: float = 0.0) -> "ControlInput":
        return cls(params.hover_force, 0.0, 0.0, yaw)

    def as_vector(self) -> np.ndarray:
        return np.array([self.f_z, self.roll, self.pitch, self.yaw])


@dataclass
class Measurement:
    """Sensor vector ``[x y z u v w Fz roll pitch yaw]``."""

    position: np.ndarray      # m
    velocity: np.ndarray      # m/s
    f_z: float                # N
    attitude: np.ndarray      # rad

    @classmethod
    def from_vector(cls, vec) -> "Measurement":
        vec = np.asarray(vec, dtype=float)
        return cls(vec[0:3].copy(), vec[3:6].copy(), float(vec[6]), vec[7:10].copy())

    def as_vector(self) -> np.ndarray:
        out = np.empty(NY)
        out[0:3] = self.position
        out[3:6] = self.velocity
        out[6] = self.f_z
        out[7:10] = self.attitude
        return out


def rotation_world_from_body(roll: float, pitch: float, yaw: float) -> np.ndarray:
    """Body-to-world rotation, Z-Y-X intrinsic (yaw-pitch-roll) convention."""
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    return np.array([
        [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
        [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
        [-sp,     cp * sr,                cp * cr],
    ])


def thrust_axis_world(roll, pitch, yaw) -> np.ndarray:
    """Body z axis in world coordinates (third column of the rotation).

    Broadcasts over any leading shape; returns ``(..., 3)``.
    """
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    return np.stack([
        cy * sp * cr + sy * sr,
        sy * sp * cr - cy * sr,
        cp * cr,
    ], axis=-1)


def thrust_axis_jacobian(roll, pitch, yaw) -> np.ndarray:
    """Derivative of the world thrust axis wrt (roll, pitch, yaw), ``(..., 3, 3)``."""
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    d_roll = np.stack([
        -cy * sp * sr + sy * cr,
        -sy * sp * sr - cy * cr,
        -cp * sr,
    ], axis=-1)
    d_pitch = np.stack([
        cy * cp * cr,
        sy * cp * cr,
        -sp * cr,
    ], axis=-1)
    d_yaw = np.stack([
        -sy * sp * cr + cy * sr,
        cy * sp * cr + sy * sr,
        np.zeros(np.broadcast_shapes(np.shape(roll), np.shape(yaw))),
    ], axis=-1)
    return np.stack([d_roll, d_pitch, d_yaw], axis=-1)


class AugmentedDynamics:
    """Continuous-time 9-state model; the external force is a constant
    disturbance (zero derivative)."""

    nx = NX_AUG
    nu = NU

    def __init__(self, params: VehicleParams):
        self.params = params

    def f(self, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        p = self.params
        axis = thrust_axis_world(u[..., 1], u[..., 2], u[..., 3])
        acc = (u[..., 0:1] * axis + x[..., F_EXT]) / p.mass
        out = np.zeros_like(x)
        out[..., POS] = x[..., VEL]
        out[..., VEL] = acc
        out[..., 5] -= p.gravity
        return out

    def jac(self, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        p = self.params
        batch = x.shape[:-1]
        A = np.zeros(batch + (self.nx, self.nx))
        A[..., 0, 3] = A[..., 1, 4] = A[..., 2, 5] = 1.0
        inv_m = 1.0 / p.mass
        A[..., 3, 6] = A[..., 4, 7] = A[..., 5, 8] = inv_m
        B = np.zeros(batch + (self.nx, self.nu))
        axis = thrust_axis_world(u[..., 1], u[..., 2], u[..., 3])
        B[..., VEL, 0] = axis * inv_m
        B[..., VEL, 1:4] = u[..., 0, None, None] * inv_m * \
            thrust_axis_jacobian(u[..., 1], u[..., 2], u[..., 3])
        return A, B


class TranslationalDynamics:
    """Continuous-time 6-state model with the external force as a fixed
    parameter, updated by the caller before each solve."""

    nx = NX_TRANS
    nu = NU

    def __init__(self, params: VehicleParams, f_ext=None):
        self.params = params
        self.f_ext = np.zeros(3) if f_ext is None else np.asarray(f_ext, dtype=float)

    def f(self, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        p = self.params
        axis = thrust_axis_world(u[..., 1], u[..., 2], u[..., 3])
        acc = (u[..., 0:1] * axis + self.f_ext) / p.mass
        out = np.zeros_like(x)
        out[..., 0:3] = x[..., 3:6]
        out[..., 3:6] = acc
        out[..., 5] -= p.gravity
        return out

    def jac(self, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        p = self.params
        batch = x.shape[:-1]
        A = np.zeros(batch + (self.nx, self.nx))
        A[..., 0, 3] = A[..., 1, 4] = A[..., 2, 5] = 1.0
        inv_m = 1.0 / p.mass
        B = np.zeros(batch + (self.nx, self.nu))
        axis = thrust_axis_world(u[..., 1], u[..., 2], u[..., 3])
        B[..., 3:6, 0] = axis * inv_m
        B[..., 3:6, 1:4] = u[..., 0, None, None] * inv_m * \
            thrust_axis_jacobian(u[..., 1], u[..., 2], u[..., 3])
        return A, B


def dynamics_continuous(state: AugmentedState, u: ControlInput,
                        params: VehicleParams) -> np.ndarray:
    """Time derivative of the augmented state (9-vector)."""
    return AugmentedDynamics(params).f(state.as_vector(), u.as_vector())


def measure(state: AugmentedState, u: ControlInput) -> Measurement:
    """Noise-free sensor model: pose and velocity from the state, vertical
    force and attitude from the input.  The external force is unobserved."""
    return Measurement(
        position=state.position.copy(),
        velocity=state.velocity.copy(),
        f_z=u.f_z,
        attitude=np.array([u.roll, u.pitch, u.yaw]),
    )


# measurement Jacobian wrt the augmented state (constant: the input
# channels do not depend on the state)
MEASUREMENT_JAC = np.zeros((NY, NX_AUG))
MEASUREMENT_JAC[0:6, 0:6] = np.eye(6)


def measurement_vector(x, u) -> np.ndarray:
    """h(x, u) on raw vectors, broadcasting over leading dimensions."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    return np.concatenate([x[..., 0:6], u[..., 0:1], u[..., 1:4]], axis=-1)
