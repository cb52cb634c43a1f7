# -*- coding: utf-8 -*-
"""
Workspace values (WorkPoint variants) and the geometry the rest of the package needs on them: distances, geodesic
interpolation, tangent ("log") vectors and small random perturbations.

Tangent vectors are expressed in the same coordinates the mechanisms use for their Jacobians:

    Planar   -> (dx, dy)
    Circle   -> (dtheta,)
    Torus    -> (dtheta_1, ..., dtheta_n)
    Sphere   -> ambient 3-vector tangent at the base point
    Rotation -> body-frame rotation vector
    Pose     -> (dp, body-frame rotation vector)
"""
import math
from dataclasses import dataclass

import numpy as np

from kinatlas.core.angles import JointAngles, angle_normalize, wrap_pi, torus_distance
from kinatlas.core import rotations
from kinatlas.errors import InvalidInput, VariantMismatch
from kinatlas.settings import TOLERANCES


def _frozen(values, shape):
    a = np.array(values, dtype=float).reshape(shape)
    if not np.all(np.isfinite(a)):
        raise InvalidInput("Workspace values must be finite")
    a.setflags(write=False)
    return a


class WorkPoint(object):
    kind = None

    def to_json(self):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Planar(WorkPoint):
    x: float
    y: float
    kind = 'planar'

    def __post_init__(self):
        _frozen([self.x, self.y], (2,))

    @property
    def array(self):
        return np.array([self.x, self.y], dtype=float)

    @property
    def radius(self):
        return math.hypot(self.x, self.y)

    def to_json(self):
        return {'kind': self.kind, 'x': self.x, 'y': self.y}


@dataclass(frozen=True, eq=False)
class Circle(WorkPoint):
    theta: float
    kind = 'circle'

    def __post_init__(self):
        object.__setattr__(self, 'theta', angle_normalize(self.theta))

    @property
    def array(self):
        return np.array([self.theta])

    def to_json(self):
        return {'kind': self.kind, 'theta': self.theta}


@dataclass(frozen=True, eq=False)
class Torus(WorkPoint):
    """Workspace value of the identity map on T^n."""
    angles: JointAngles
    kind = 'torus'

    def __post_init__(self):
        if not isinstance(self.angles, JointAngles):
            object.__setattr__(self, 'angles', JointAngles(tuple(self.angles)))

    @property
    def array(self):
        return self.angles.as_array()

    def to_json(self):
        return {'kind': self.kind, 'angles': list(self.angles)}


@dataclass(frozen=True, eq=False)
class Sphere(WorkPoint):
    v: np.ndarray
    kind = 'sphere'

    def __post_init__(self):
        v = _frozen(self.v, (3,))
        if abs(np.linalg.norm(v) - 1.0) > TOLERANCES.unit:
            raise InvalidInput("Sphere point must have unit norm, got %r" % np.linalg.norm(v))
        object.__setattr__(self, 'v', v)

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if not n > 0.0:
            raise InvalidInput("Cannot normalize a zero vector")
        return cls(v / n)

    @property
    def array(self):
        return np.array(self.v)

    def to_json(self):
        return {'kind': self.kind, 'v': [float(a) for a in self.v]}


@dataclass(frozen=True, eq=False)
class Rotation(WorkPoint):
    matrix: np.ndarray
    kind = 'rotation'

    def __post_init__(self):
        m = _frozen(self.matrix, (3, 3))
        if not rotations.is_rotation(m, TOLERANCES.orthonormal):
            raise InvalidInput("Not a rotation matrix (orthonormality/determinant off by more than %g)"
                               % TOLERANCES.orthonormal)
        object.__setattr__(self, 'matrix', m)

    @property
    def array(self):
        return np.array(self.matrix)

    def to_json(self):
        return {'kind': self.kind, 'R': [[float(a) for a in row] for row in self.matrix]}


@dataclass(frozen=True, eq=False)
class Pose(WorkPoint):
    p: np.ndarray
    matrix: np.ndarray
    kind = 'pose'

    def __post_init__(self):
        object.__setattr__(self, 'p', _frozen(self.p, (3,)))
        m = _frozen(self.matrix, (3, 3))
        if not rotations.is_rotation(m, TOLERANCES.orthonormal):
            raise InvalidInput("Pose rotation is not a rotation matrix")
        object.__setattr__(self, 'matrix', m)

    def to_json(self):
        return {'kind': self.kind, 'p': [float(a) for a in self.p],
                'R': [[float(a) for a in row] for row in self.matrix]}


KINDS = {cls.kind: cls for cls in (Planar, Circle, Torus, Sphere, Rotation, Pose)}


def check_same_kind(w1, w2):
    if type(w1) is not type(w2):
        raise VariantMismatch("Cannot combine %s and %s workspace values"
                              % (getattr(w1, 'kind', type(w1).__name__), getattr(w2, 'kind', type(w2).__name__)))


def _sphere_angle(a, b):
    return math.atan2(float(np.linalg.norm(np.cross(a, b))), float(np.dot(a, b)))


def work_distance(w1, w2):
    """Geodesic distance of two workspace values of the same kind; poses take the max of position and angle."""
    check_same_kind(w1, w2)
    if isinstance(w1, Planar):
        return math.hypot(w1.x - w2.x, w1.y - w2.y)
    if isinstance(w1, Circle):
        return float(abs(wrap_pi(w2.theta - w1.theta)))
    if isinstance(w1, Torus):
        return torus_distance(w1.angles, w2.angles)
    if isinstance(w1, Sphere):
        return _sphere_angle(w1.v, w2.v)
    if isinstance(w1, Rotation):
        return rotations.rotation_angle(w1.matrix, w2.matrix)
    # Pose: position and orientation errors must both be small
    return max(float(np.linalg.norm(w1.p - w2.p)), rotations.rotation_angle(w1.matrix, w2.matrix))


def work_log(a, b):
    """Tangent vector at a pointing to b along the geodesic, with length equal to the geodesic length."""
    check_same_kind(a, b)
    if isinstance(a, Planar):
        return b.array - a.array
    if isinstance(a, (Circle, Torus)):
        return wrap_pi(b.array - a.array)
    if isinstance(a, Sphere):
        cos_a = float(np.dot(a.v, b.v))
        u = b.v - cos_a * a.v
        n = float(np.linalg.norm(u))
        if n == 0.0:
            return np.zeros(3)
        return _sphere_angle(a.v, b.v) * u / n
    if isinstance(a, Rotation):
        return rotations.log_so3(a.matrix.T @ b.matrix)
    return np.concatenate([b.p - a.p, rotations.log_so3(a.matrix.T @ b.matrix)])


def work_exp(a, v):
    """Move from a along tangent vector v (inverse of work_log for short vectors)."""
    v = np.asarray(v, dtype=float)
    if isinstance(a, Planar):
        return Planar(a.x + v[0], a.y + v[1])
    if isinstance(a, Circle):
        return Circle(a.theta + v[0])
    if isinstance(a, Torus):
        return Torus(a.angles.shifted(v))
    if isinstance(a, Sphere):
        n = float(np.linalg.norm(v))
        if n == 0.0:
            return a
        return Sphere.from_vector(math.cos(n) * a.v + math.sin(n) * v / n)
    if isinstance(a, Rotation):
        return Rotation(a.matrix @ rotations.exp_so3(v))
    return Pose(a.p + v[:3], a.matrix @ rotations.exp_so3(v[3:]))


def work_interpolate(a, b, s):
    """Point at fraction s of the geodesic from a to b."""
    check_same_kind(a, b)
    if s == 0.0:
        return a
    if s == 1.0:
        return b
    if isinstance(a, Planar):
        return Planar(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y))
    if isinstance(a, Sphere):
        omega = _sphere_angle(a.v, b.v)
        if omega < 1e-12:
            return Sphere.from_vector(a.v + s * (b.v - a.v))
        return Sphere.from_vector((math.sin((1.0 - s) * omega) * a.v + math.sin(s * omega) * b.v)
                                  / math.sin(omega))
    return work_exp(a, s * work_log(a, b))


TANGENT_DIMS = {'planar': 2, 'circle': 1, 'sphere': 3, 'rotation': 3, 'pose': 6}


def tangent_dim(w):
    if isinstance(w, Torus):
        return len(w.angles)
    return TANGENT_DIMS[w.kind]


def work_perturb(w, delta, rng):
    """A random workspace value at distance (about) delta from w."""
    if isinstance(w, Sphere):
        d = rng.normal(size=3)
        d -= np.dot(d, w.v) * w.v
        return work_exp(w, delta * d / np.linalg.norm(d))
    if isinstance(w, Pose):
        d = rng.normal(size=6)
        d[:3] *= delta / np.linalg.norm(d[:3])
        d[3:] *= delta / np.linalg.norm(d[3:])
        return work_exp(w, d)
    if isinstance(w, Torus):
        d = rng.uniform(-1.0, 1.0, size=len(w.angles))
        return work_exp(w, delta * d / np.max(np.abs(d)))
    d = rng.normal(size=tangent_dim(w))
    return work_exp(w, delta * d / np.linalg.norm(d))


def work_from_json(js):
    try:
        kind = js['kind']
        if kind == 'planar':
            if 'p' in js:
                return Planar(float(js['p'][0]), float(js['p'][1]))
            return Planar(float(js['x']), float(js['y']))
        if kind == 'circle':
            return Circle(float(js['theta']))
        if kind == 'torus':
            return Torus(JointAngles(tuple(float(a) for a in js['angles'])))
        if kind == 'sphere':
            return Sphere.from_vector(js['v'])
        if kind == 'rotation':
            return Rotation(np.array(js['R'], dtype=float))
        if kind == 'pose':
            return Pose(np.array(js['p'], dtype=float), np.array(js['R'], dtype=float))
    except (KeyError, TypeError, IndexError, ValueError) as e:
        if isinstance(e, InvalidInput):
            raise
        raise InvalidInput("Malformed workspace value %r: %s" % (js, e))
    raise InvalidInput("Unknown workspace kind %r" % js.get('kind'))


@dataclass(frozen=True, eq=False)
class Query:
    """A planning request: start configuration and goal workspace value."""
    config: JointAngles
    target: WorkPoint

    def to_json(self):
        return {'config': list(self.config), 'target': self.target.to_json()}

    @classmethod
    def from_json(cls, js):
        if not isinstance(js, dict) or 'config' not in js or 'target' not in js:
            raise InvalidInput("Query needs 'config' and 'target' entries")
        try:
            config = JointAngles(tuple(float(a) for a in js['config']))
        except (TypeError, ValueError) as e:
            raise InvalidInput("Malformed query configuration: %s" % e)
        return cls(config, work_from_json(js['target']))

    def __repr__(self):
        return "Query(%r -> %r)" % (self.config, self.target)
