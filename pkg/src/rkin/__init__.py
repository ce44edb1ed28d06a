"""rkin: rigid-body kinematics toolkit.

Rotation algebra on SO(3), homogeneous transforms, child-sibling robot
trees, forward kinematics and end-point velocity propagation, plus a
``.rkin`` robot-description format, a CLI and an HTTP service.
"""

from .errors import (DomainError, InputError, ModelError, ParseError,
                     UnknownLinkError)
from .fk import end_point_position, forward_kinematics, joint_transform
from .model import (JointState, LinkRecord, RobotModel, build_model,
                    joint_states)
from .rkinfile import load as load_robot
from .rkinfile import parse as parse_robot
from .rkinfile import serialize as serialize_robot
from .rotation import (cross, exp_so3, exp_so3_vec, exp_taylor, hat,
                       hat_powers_check, is_rotation, log_so3,
                       rotate_angular_velocity,
                       rotate_linear_velocity_identity_check, rot_x, rot_y,
                       rot_z, rpy, validate_rotation, vee)
from .transform import (Transform, apply, compose, identity_transform,
                        invert, make_transform)
from .velocity import (VelocityState, end_point_velocity,
                       finite_difference_check, joint_world_angular_velocity,
                       single_link_velocity)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InputError", "ModelError", "ParseError", "UnknownLinkError",
    "rot_x", "rot_y", "rot_z", "rpy", "cross", "hat", "vee",
    "exp_so3", "exp_so3_vec", "exp_taylor", "hat_powers_check", "log_so3",
    "is_rotation", "validate_rotation",
    "rotate_angular_velocity", "rotate_linear_velocity_identity_check",
    "Transform", "make_transform", "apply", "compose", "invert",
    "identity_transform",
    "JointState", "LinkRecord", "RobotModel", "build_model", "joint_states",
    "joint_transform", "forward_kinematics", "end_point_position",
    "VelocityState", "joint_world_angular_velocity", "end_point_velocity",
    "single_link_velocity", "finite_difference_check",
    "parse_robot", "serialize_robot", "load_robot",
    "__version__",
]
