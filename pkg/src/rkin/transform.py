"""Homogeneous transformations stored as an (R, p) pair.

The dummy 0/1 row of the 4x4 form is never materialized; ``apply`` computes
R @ x + p directly and ``compose`` uses the block product
(A.R @ B.R, A.R @ B.p + A.p).
"""

from typing import NamedTuple

import numpy as np

from . import textfmt
from .rotation import as_vec3, validate_rotation


class Transform(NamedTuple):
    rotation: np.ndarray     # 3x3, child axes expressed in the parent frame
    translation: np.ndarray  # meters, child origin in the parent frame


def identity_transform() -> Transform:
    return Transform(np.eye(3), np.zeros(3))


def make_transform(r, p) -> Transform:
    """Pack a validated rotation and a translation into a Transform."""
    return Transform(validate_rotation(r), as_vec3(p))


def apply(t: Transform, point) -> np.ndarray:
    """Map child-frame coordinates into the parent frame: R @ x + p."""
    return t.rotation @ as_vec3(point) + t.translation


def compose(outer: Transform, inner: Transform) -> Transform:
    """Chain rule: apply(compose(A, B), x) == apply(A, apply(B, x))."""
    return Transform(outer.rotation @ inner.rotation,
                     outer.rotation @ inner.translation + outer.translation)


def invert(t: Transform) -> Transform:
    """Inverse transform (R^T, -R^T p); compose(invert(T), T) is the identity."""
    rt = t.rotation.T
    return Transform(rt, -(rt @ t.translation))


def as_matrix(t: Transform) -> np.ndarray:
    """Dense 4x4 form, for interop and independent checks."""
    m = np.eye(4)
    m[:3, :3] = t.rotation
    m[:3, 3] = t.translation
    return m


def format_transform(t: Transform) -> str:
    return f"R={textfmt.fmt_matrix(t.rotation)} p={textfmt.fmt_vector(t.translation)}"
