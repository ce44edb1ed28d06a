"""SO(3) rotation algebra.

Single-axis and roll-pitch-yaw rotation matrices, the cross product, the
hat/vee pair between 3-vectors and skew-symmetric matrices, the Rodrigues
exponential with its truncated-series verification oracle, and the matrix
logarithm. Angles are radians; positive angles rotate counter-clockwise
about the axis (right-hand rule). All functions are pure.
"""

import math

import numpy as np

from .errors import DomainError

ORTHOGONALITY_TOL = 1e-9   # validation gate for rotation matrices
UNIT_AXIS_TOL = 1e-9       # exp_so3 rejects axes further from unit length
IDENTITY_TOL = 1e-9        # log_so3: R == I detection, entrywise
DIAGONAL_TOL = 1e-9        # log_so3: diagonal-R detection, entrywise
NEAR_PI_TRACE_TOL = 1e-6   # log_so3: trace <= -1 + tol enters the near-pi handling
NEAR_PI_MIN_A = 2e-6       # log_so3: |a| below this switches to diagonal axis recovery
SKEW_TOL = 1e-9            # vee rejects matrices with a larger symmetric part


def as_vec3(v) -> np.ndarray:
    """Coerce to a finite float64 3-vector."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("vector components must be finite")
    return arr


def _finite_angle(angle) -> float:
    a = float(angle)
    if not math.isfinite(a):
        raise DomainError("angle must be finite")
    return a


def rot_x(angle: float) -> np.ndarray:
    """Rotation about the x axis (roll)."""
    a = _finite_angle(angle)
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0],
                     [0.0, c, -s],
                     [0.0, s, c]])


def rot_y(angle: float) -> np.ndarray:
    """Rotation about the y axis (pitch)."""
    a = _finite_angle(angle)
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, s],
                     [0.0, 1.0, 0.0],
                     [-s, 0.0, c]])


def rot_z(angle: float) -> np.ndarray:
    """Rotation about the z axis (yaw)."""
    a = _finite_angle(angle)
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0],
                     [s, c, 0.0],
                     [0.0, 0.0, 1.0]])


def rpy(roll: float, pitch: float, yaw: float) -> np.ndarray:
    """Composed rotation rot_z(yaw) @ rot_y(pitch) @ rot_x(roll)."""
    return rot_z(yaw) @ rot_y(pitch) @ rot_x(roll)


def cross(a, b) -> np.ndarray:
    """Cross product a x b (right-hand rule)."""
    ax, ay, az = as_vec3(a)
    bx, by, bz = as_vec3(b)
    return np.array([ay * bz - az * by,
                     az * bx - ax * bz,
                     ax * by - ay * bx])


def hat(w) -> np.ndarray:
    """Skew-symmetric matrix of w, satisfying hat(w) @ p == cross(w, p).

    The matrix is assembled from the three components and their exact
    negations, so S.T == -S holds bit-for-bit.
    """
    x, y, z = as_vec3(w)
    return np.array([[0.0, -z, y],
                     [z, 0.0, -x],
                     [-y, x, 0.0]])


def vee(s) -> np.ndarray:
    """Inverse of hat. Accepts any 3x3 matrix whose symmetric part is below
    SKEW_TOL; rejects anything else so the logarithm cannot silently consume
    a non-skew input."""
    m = np.asarray(s, dtype=float)
    if m.shape != (3, 3):
        raise DomainError(f"expected a 3x3 matrix, got shape {m.shape}")
    if np.abs(m + m.T).max() > SKEW_TOL:
        raise DomainError("matrix is not skew-symmetric")
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def is_rotation(r, tol: float = ORTHOGONALITY_TOL) -> bool:
    """True iff r is orthogonal with determinant +1 within tol."""
    m = np.asarray(r, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        return False
    if np.abs(m.T @ m - np.eye(3)).max() > tol:
        return False
    return abs(np.linalg.det(m) - 1.0) <= tol


def validate_rotation(r, tol: float = ORTHOGONALITY_TOL) -> np.ndarray:
    """Return r as float64 after checking the rotation-matrix invariants."""
    m = np.asarray(r, dtype=float)
    if m.shape != (3, 3):
        raise DomainError(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    if np.abs(m.T @ m - np.eye(3)).max() > tol:
        raise DomainError("matrix is not orthogonal")
    if abs(np.linalg.det(m) - 1.0) > tol:
        raise DomainError("matrix determinant is not +1 (improper rotation)")
    return m


def _unit_axis(axis) -> np.ndarray:
    e = as_vec3(axis)
    n = np.linalg.norm(e)
    if abs(n - 1.0) > UNIT_AXIS_TOL:
        raise DomainError(f"axis must have unit length, got norm {n!r}")
    return e


def exp_so3(axis, angle: float) -> np.ndarray:
    """Rodrigues form of the rotation exponential:
    I + hat(e)*sin(angle) + hat(e)^2*(1 - cos(angle)).

    The axis must already be unit length; callers normalize explicitly
    (or use exp_so3_vec) so magnitude bugs stay visible.
    """
    e = _unit_axis(axis)
    a = _finite_angle(angle)
    k = hat(e)
    return np.eye(3) + k * math.sin(a) + (k @ k) * (1.0 - math.cos(a))


def exp_so3_vec(w) -> np.ndarray:
    """Exponential of an unnormalized rotation vector: the norm is the angle,
    the direction the axis. The zero vector maps to the identity."""
    v = as_vec3(w)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return np.eye(3)
    return exp_so3(v / n, n)


def exp_taylor(w, t: float, terms: int) -> np.ndarray:
    """Partial sum of the matrix exponential series for hat(w)*t:
    sum_{k=0}^{terms-1} (hat(w) t)^k / k!.

    This is the verification oracle for exp_so3, not the production path;
    terms=1 returns the identity (zeroth term only).
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    a = hat(w) * _finite_angle(t)
    acc = np.eye(3)
    term = np.eye(3)
    for k in range(1, terms):
        term = term @ a / k
        acc = acc + term
    return acc


def hat_powers_check(e, n: int, tol: float = 1e-12) -> bool:
    """Check the unit-axis power identities hat(e)^(2n+1) == (-1)^n hat(e)
    and hat(e)^(2n+2) == (-1)^n hat(e)^2, entrywise within tol."""
    k = hat(_unit_axis(e))
    k2 = k @ k
    odd = np.eye(3)
    for _ in range(2 * n + 1):
        odd = odd @ k
    even = odd @ k
    sign = -1.0 if n % 2 else 1.0
    return (np.abs(odd - sign * k).max() <= tol
            and np.abs(even - sign * k2).max() <= tol)


def log_so3(r) -> np.ndarray:
    """Rotation vector (axis times angle) of a validated rotation matrix.

    Three-case form: the zero vector for the identity; (pi/2)*(diag + 1) for
    non-identity diagonal matrices (the three 180-degree axis rotations);
    otherwise theta * a/|a| with a = (r32-r23, r13-r31, r21-r12) and
    theta = atan2(|a|, trace - 1). Non-diagonal matrices with trace near -1
    recover the axis from the dominant diagonal entry of (R + R^T)/2 + I,
    where a alone is too small to be reliable.
    """
    m = validate_rotation(r)
    if np.abs(m - np.eye(3)).max() <= IDENTITY_TOL:
        return np.zeros(3)
    diag = np.diagonal(m)
    if np.abs(m - np.diag(diag)).max() <= DIAGONAL_TOL:
        return (math.pi / 2.0) * (diag + 1.0)
    a = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
    norm_a = float(np.linalg.norm(a))
    trace = float(np.trace(m))
    theta = math.atan2(norm_a, trace - 1.0)
    if trace <= -1.0 + NEAR_PI_TRACE_TOL and norm_a < NEAR_PI_MIN_A:
        # a degenerates at 180 degrees; there (R + R^T)/2 + I approaches
        # 2*e*e^T, whose dominant diagonal pins the axis.
        p = (m + m.T) / 2.0 + np.eye(3)
        i = int(np.argmax(np.diagonal(p)))
        e = np.empty(3)
        e[i] = math.sqrt(max(p[i, i], 0.0) / 2.0)
        for j in range(3):
            if j != i:
                e[j] = p[i, j] / (2.0 * e[i])
        e /= np.linalg.norm(e)
        if norm_a > 0.0 and float(np.dot(e, a)) < 0.0:
            e = -e
        return theta * e
    return (theta / norm_a) * a


def rotate_angular_velocity(r, w) -> np.ndarray:
    """Angular velocity after rotating the frame: R @ w."""
    return validate_rotation(r) @ as_vec3(w)


def rotate_linear_velocity_identity_check(r, w, p, tol: float = 1e-12) -> bool:
    """True iff R(w x p) and (Rw) x (Rp) agree within tol, both sides
    computed independently."""
    m = validate_rotation(r)
    lhs = m @ cross(w, p)
    rhs = cross(m @ as_vec3(w), m @ as_vec3(p))
    return float(np.linalg.norm(lhs - rhs)) < tol
