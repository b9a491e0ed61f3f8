"""Six-degree-of-freedom quadrotor rigid-body dynamics."""

from quadsim.dynamics import (
    STATE_NAMES,
    angular_accel,
    gyroscopic_term,
    make_state,
    state_derivative,
    translational_accel,
)
from quadsim.errors import (
    GimbalSingularityError,
    InfeasibleWrenchError,
    InvalidRotationError,
    QuadsimError,
    ScenarioError,
)
from quadsim.euler_kinematics import (
    BodyRates,
    EulerRates,
    body_rates_from_euler_rates,
    euler_rates_from_body_rates,
)
from quadsim.geometry import (
    EulerAngles,
    EulerSolutions,
    RigidTransform,
    apply_transform,
    body_from_world,
    euler_from_rotation,
    is_rigid,
    rot_x,
    rot_y,
    rot_z,
    world_from_body,
)
from quadsim.integrator import (
    InputSchedule,
    SimulationSingularityError,
    Trajectory,
    simulate,
    step_euler,
    step_rk4,
)
from quadsim.params import InertiaTensor, VehicleParams
from quadsim.rotor_model import Wrench, hover_input, input_from_wrench, wrench_from_input

__version__ = "0.1.0"
