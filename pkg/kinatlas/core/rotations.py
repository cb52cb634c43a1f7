# -*- coding: utf-8 -*-
"""
Small SO(3) helpers. The exponential and logarithm maps come from scipy's Rotation.
"""
import math

import numpy as np
from scipy.spatial.transform import Rotation


def rot_x(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0],
                     [0.0, c, -s],
                     [0.0, s, c]])


def rot_z(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0],
                     [s, c, 0.0],
                     [0.0, 0.0, 1.0]])


def vee(m):
    return np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]]) / 2.0


def rotation_angle(r1, r2):
    """
    Angle of the relative rotation r1^T r2.

    The trace gives the cosine (clamped to [-1, 1]) and the skew part the sine, so the result stays accurate near 0
    where arccos alone loses half the digits.
    """
    m = np.asarray(r1).T @ np.asarray(r2)
    cos_a = min(1.0, max(-1.0, (np.trace(m) - 1.0) / 2.0))
    sin_a = float(np.linalg.norm(vee(m)))
    return math.atan2(sin_a, cos_a)


def log_so3(r):
    """Rotation vector (axis * angle) of r."""
    return Rotation.from_matrix(np.asarray(r)).as_rotvec()


def exp_so3(v):
    return Rotation.from_rotvec(np.asarray(v, dtype=float)).as_matrix()


def quaternion_to_matrix(q):
    """Unit quaternion in scalar-last (x, y, z, w) order to a rotation matrix."""
    return Rotation.from_quat(np.asarray(q, dtype=float)).as_matrix()


def random_rotation(rng):
    """Uniformly distributed rotation: a normalized Gaussian 4-vector is a uniform unit quaternion."""
    q = rng.normal(size=4)
    return quaternion_to_matrix(q / np.linalg.norm(q))


def is_rotation(r, tol):
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3) or not np.all(np.isfinite(r)):
        return False
    return (np.max(np.abs(r.T @ r - np.eye(3))) <= tol
            and abs(np.linalg.det(r) - 1.0) <= tol)
