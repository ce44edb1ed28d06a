"""Forward kinematics: world pose of every link via chained transforms."""

from typing import Mapping

import numpy as np

from .errors import InputError
from .model import JointState, LinkRecord, RobotModel
from .rotation import as_vec3, exp_so3
from .transform import Transform, apply, compose

PoseMap = dict[int, Transform]


def joint_transform(link: LinkRecord, q: float) -> Transform:
    """Child-local to parent-local transform at joint angle q: the offset is
    fixed in the parent frame, the rotation acts on child coordinates."""
    return Transform(exp_so3(link.joint_axis, q), link.offset)


def forward_kinematics(model: RobotModel, states: Mapping[int, JointState]) -> PoseMap:
    """World transform of every link, root first in traverse order.

    Every non-root link needs an entry in states; the root ignores it.
    Omissions and unknown ids are errors rather than implicit zeros.
    """
    unknown = sorted(i for i in states if i not in model)
    if unknown:
        raise InputError(f"joint state given for unknown link ids: {unknown}")
    missing = sorted(i for i in model.ids()
                     if i != model.root_id and i not in states)
    if missing:
        raise InputError(f"missing joint state for link ids: {missing}")

    poses: PoseMap = {}
    for nid in model.traverse():
        rec = model.link(nid)
        if rec.parent_id is None:
            poses[nid] = model.base_transform
        else:
            local = joint_transform(rec, states[nid].q)
            poses[nid] = compose(poses[rec.parent_id], local)
    return poses


def end_point_position(model: RobotModel, states: Mapping[int, JointState],
                       link_id: int, local_point=(0.0, 0.0, 0.0)) -> np.ndarray:
    """World position of a point given in link-local coordinates."""
    poses = forward_kinematics(model, states)
    return apply(poses[model.link(link_id).self_id], as_vec3(local_point))
