"""End-point velocity from joint rates.

The angular velocity of an end point is the sum of the world-frame joint
contributions along its chain; the linear velocity adds one cross-product
term per joint:

    w_e = w_base + sum_i w_i
    v_e = v_base + sum_i w_i x (p_e - p_i)

with p_i the world origin of joint i and p_e the world end point. A central
finite difference through full forward kinematics serves as the built-in
self-check.
"""

from typing import Mapping, NamedTuple

import numpy as np

from .errors import DomainError, InputError
from .fk import PoseMap, forward_kinematics
from .model import JointState, RobotModel, joint_states
from .rotation import as_vec3, cross
from .transform import apply


class VelocityState(NamedTuple):
    linear: np.ndarray   # m/s, world frame
    angular: np.ndarray  # rad/s, world frame


def joint_world_angular_velocity(model: RobotModel, posemap: PoseMap,
                                 link_id: int, dq: float) -> np.ndarray:
    """The link's own joint contribution to world angular velocity:
    R[parent -> world] @ (dq * joint_axis). Zero for the root, which has
    no joint."""
    rec = model.link(link_id)
    if rec.parent_id is None:
        return np.zeros(3)
    return posemap[rec.parent_id].rotation @ (float(dq) * rec.joint_axis)


def end_point_velocity(model: RobotModel, posemap: PoseMap,
                       states: Mapping[int, JointState], link_id: int,
                       local_point=(0.0, 0.0, 0.0)) -> VelocityState:
    """Linear and angular world velocity of a link-local point.

    posemap must come from forward_kinematics on the same angles as states;
    staleness is not detectable here and recomputing per query is the
    caller's contract.
    """
    p_end = apply(posemap[model.link(link_id).self_id], as_vec3(local_point))
    v = model.base_linear_velocity.copy()
    w = model.base_angular_velocity.copy()
    for nid in model.path_to_root(link_id):
        if nid == model.root_id:
            continue
        if nid not in states:
            raise InputError(f"missing joint state for link id {nid}")
        w_joint = joint_world_angular_velocity(model, posemap, nid, states[nid].dq)
        v = v + cross(w_joint, p_end - posemap[nid].translation)
        w = w + w_joint
    return VelocityState(v, w)


def single_link_velocity(model: RobotModel, posemap: PoseMap, joint_id: int,
                         dq: float, local_point=(0.0, 0.0, 0.0)) -> VelocityState:
    """One-joint specialization: v = v_base + w x (p_target - p_joint), with
    the end point's angular velocity equal to the joint's."""
    p_target = apply(posemap[model.link(joint_id).self_id], as_vec3(local_point))
    w_joint = joint_world_angular_velocity(model, posemap, joint_id, dq)
    v = model.base_linear_velocity + cross(w_joint, p_target - posemap[joint_id].translation)
    w = model.base_angular_velocity + w_joint
    return VelocityState(v, w)


def finite_difference_check(model: RobotModel, q: Mapping[int, float],
                            dq: Mapping[int, float], link_id: int,
                            local_point=(0.0, 0.0, 0.0), h: float = 1e-5) -> float:
    """Norm of the difference between the analytic linear velocity and the
    central difference [p(q + h*dq) - p(q - h*dq)] / (2h) through full
    forward kinematics. Scales as O(h^2) in the step."""
    if h <= 0.0:
        raise DomainError("finite-difference step h must be positive")
    point = as_vec3(local_point)

    target = model.link(link_id).self_id

    def position(angles: Mapping[int, float]) -> np.ndarray:
        poses = forward_kinematics(model, joint_states(angles))
        return apply(poses[target], point)

    q_plus = {i: qi + h * dq.get(i, 0.0) for i, qi in q.items()}
    q_minus = {i: qi - h * dq.get(i, 0.0) for i, qi in q.items()}
    fd = (position(q_plus) - position(q_minus)) / (2.0 * h)

    states = joint_states(dict(q), dict(dq))
    poses = forward_kinematics(model, states)
    analytic = end_point_velocity(model, poses, states, target, point).linear
    return float(np.linalg.norm(fd - analytic))
