"""Robot body model: per-link records stored in a child-sibling tree.

Every link carries exactly one revolute joint at its proximal end, with the
rotation axis fixed in the parent's frame. The root (trunk) has no joint;
its world pose is the model-level base transform. Mass, center of mass and
inertia are parsed, validated and surfaced in dumps but never consumed here.
"""

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, ModelError, UnknownLinkError
from .rotation import UNIT_AXIS_TOL, as_vec3
from .transform import Transform, identity_transform

INERTIA_SYMMETRY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class JointState:
    """Angle (rad), rate (rad/s) and acceleration (rad/s^2, stored only)."""

    q: float
    dq: float = 0.0
    ddq: float = 0.0

    def __post_init__(self):
        for name in ("q", "dq", "ddq"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"joint state {name} must be finite")
            object.__setattr__(self, name, value)


@dataclass(frozen=True, eq=False)
class LinkRecord:
    """One link of the robot body.

    joint_axis is the unit rotation axis in the parent-attached frame;
    offset is the vector from the parent's joint origin to this link's joint
    origin, expressed in the parent frame at zero joint angle. child_id and
    sibling_id are derived by build_model and should be left unset.
    """

    self_id: int
    name: str
    parent_id: int | None
    joint_axis: np.ndarray
    offset: np.ndarray
    mass: float = 0.0
    com: np.ndarray = field(default_factory=lambda: np.zeros(3))
    inertia: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))
    child_id: int | None = None
    sibling_id: int | None = None

    def __post_init__(self):
        if self.self_id < 0:
            raise DomainError(f"link id must be >= 0, got {self.self_id}")
        axis = as_vec3(self.joint_axis)
        if abs(float(np.linalg.norm(axis)) - 1.0) > UNIT_AXIS_TOL:
            raise DomainError(f"link {self.self_id}: joint axis must have unit length")
        object.__setattr__(self, "joint_axis", axis)
        object.__setattr__(self, "offset", as_vec3(self.offset))
        object.__setattr__(self, "com", as_vec3(self.com))
        mass = float(self.mass)
        if not math.isfinite(mass):
            raise DomainError(f"link {self.self_id}: mass must be finite")
        object.__setattr__(self, "mass", mass)
        inertia = np.asarray(self.inertia, dtype=float)
        if inertia.shape != (3, 3) or not np.all(np.isfinite(inertia)):
            raise DomainError(f"link {self.self_id}: inertia must be a finite 3x3 matrix")
        if np.abs(inertia - inertia.T).max() > INERTIA_SYMMETRY_TOL:
            raise DomainError(f"link {self.self_id}: inertia matrix is not symmetric")
        object.__setattr__(self, "inertia", inertia)


@dataclass(frozen=True, eq=False)
class RobotModel:
    """Immutable robot tree. ``links`` keeps declaration order, which fixes
    the sibling chains; lookups go through the id index."""

    links: tuple[LinkRecord, ...]
    root_id: int
    base_transform: Transform
    base_linear_velocity: np.ndarray
    base_angular_velocity: np.ndarray

    @cached_property
    def _index(self) -> dict[int, LinkRecord]:
        return {rec.self_id: rec for rec in self.links}

    def ids(self) -> list[int]:
        return [rec.self_id for rec in self.links]

    def __len__(self) -> int:
        return len(self.links)

    def __contains__(self, link_id: int) -> bool:
        return link_id in self._index

    def link(self, link_id: int) -> LinkRecord:
        try:
            return self._index[link_id]
        except KeyError:
            raise UnknownLinkError(f"unknown link id {link_id}") from None

    def traverse(self) -> list[int]:
        """Pre-order over the child-sibling structure: node, then the child
        subtree, then the sibling subtree. Every parent precedes all of its
        descendants."""
        order: list[int] = []
        seen: set[int] = set()
        stack = [self.root_id]
        while stack:
            nid = stack.pop()
            if nid in seen:
                raise ModelError(f"link {nid} revisited during traversal")
            seen.add(nid)
            order.append(nid)
            rec = self.link(nid)
            if rec.sibling_id is not None:
                stack.append(rec.sibling_id)
            if rec.child_id is not None:
                stack.append(rec.child_id)
        return order

    def path_to_root(self, link_id: int) -> list[int]:
        """Chain of ids from the root down to link_id (root first)."""
        path = [self.link(link_id).self_id]
        seen = {link_id}
        current = self.link(link_id)
        while current.parent_id is not None:
            if current.parent_id in seen:
                raise ModelError(f"parent cycle at link {current.parent_id}")
            current = self.link(current.parent_id)
            seen.add(current.self_id)
            path.append(current.self_id)
        path.reverse()
        return path


def build_model(records: Sequence[LinkRecord],
                base_transform: Transform | None = None,
                base_linear_velocity=None,
                base_angular_velocity=None) -> RobotModel:
    """Assemble validated records into a RobotModel, deriving the child and
    sibling pointers: a node's first child is its earliest-declared child and
    siblings chain in declaration order.

    base_transform places the root in the world frame; the base velocities
    support floating bases and default to zero.
    """
    if not records:
        raise ModelError("a robot model needs at least one link")
    ids_seen: set[int] = set()
    for rec in records:
        if rec.self_id in ids_seen:
            raise ModelError(f"duplicate link id {rec.self_id}")
        ids_seen.add(rec.self_id)

    roots = [rec for rec in records if rec.parent_id is None]
    if not roots:
        raise ModelError("no root link (every link declares a parent)")
    if len(roots) > 1:
        extra = ", ".join(str(r.self_id) for r in roots)
        raise ModelError(f"multiple root links: {extra}")

    children: dict[int, list[int]] = {rec.self_id: [] for rec in records}
    for rec in records:
        if rec.parent_id is None:
            continue
        if rec.parent_id not in ids_seen:
            raise ModelError(f"link {rec.self_id} references unknown parent {rec.parent_id}")
        children[rec.parent_id].append(rec.self_id)

    linked = []
    for rec in records:
        kids = children[rec.self_id]
        child_id = kids[0] if kids else None
        siblings = children[rec.parent_id] if rec.parent_id is not None else []
        sibling_id = None
        if rec.self_id in siblings:
            pos = siblings.index(rec.self_id)
            if pos + 1 < len(siblings):
                sibling_id = siblings[pos + 1]
        linked.append(replace(rec, child_id=child_id, sibling_id=sibling_id))

    model = RobotModel(
        links=tuple(linked),
        root_id=roots[0].self_id,
        base_transform=base_transform if base_transform is not None else identity_transform(),
        base_linear_velocity=as_vec3(base_linear_velocity) if base_linear_velocity is not None else np.zeros(3),
        base_angular_velocity=as_vec3(base_angular_velocity) if base_angular_velocity is not None else np.zeros(3),
    )
    reached = model.traverse()
    if len(reached) != len(records):
        missing = sorted(ids_seen - set(reached))
        raise ModelError(f"links not reachable from the root (parent cycle?): {missing}")
    return model


def joint_states(q: Mapping[int, float],
                 dq: Mapping[int, float] | None = None,
                 ddq: Mapping[int, float] | None = None) -> dict[int, JointState]:
    """Zip plain angle/rate maps into JointState records."""
    dq = dq or {}
    ddq = ddq or {}
    return {i: JointState(q=qi, dq=dq.get(i, 0.0), ddq=ddq.get(i, 0.0))
            for i, qi in q.items()}
