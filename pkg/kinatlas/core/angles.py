# -*- coding: utf-8 -*-
"""
Angle arithmetic and points of the torus T^n.
"""
import math
from dataclasses import dataclass

import numpy as np

from kinatlas.errors import InvalidInput, DimensionError

TWO_PI = 2.0 * math.pi


def angle_normalize(a):
    """Representative of a (radians) in [0, 2pi)."""
    a = float(a)
    if not math.isfinite(a):
        raise InvalidInput("Angle must be finite, got %r" % a)
    r = math.fmod(a, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    # -1e-17 + 2pi rounds to 2pi
    if r >= TWO_PI:
        r = 0.0
    return r


def normalize_array(a):
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise InvalidInput("Angles must be finite")
    r = np.mod(a, TWO_PI)
    r[r >= TWO_PI] = 0.0
    return r


def wrap_pi(d):
    """Shortest signed representative of d in [-pi, pi)."""
    return (np.asarray(d, dtype=float) + math.pi) % TWO_PI - math.pi


def circle_distance(a, b):
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % TWO_PI
    return np.minimum(d, TWO_PI - d)


@dataclass(frozen=True)
class JointAngles:
    """A point of T^n. Stored angles are normalized to [0, 2pi)."""
    angles: tuple

    def __post_init__(self):
        values = tuple(angle_normalize(a) for a in self.angles)
        if len(values) < 1:
            raise InvalidInput("JointAngles needs at least one coordinate")
        object.__setattr__(self, 'angles', values)

    @classmethod
    def of(cls, *angles):
        return cls(tuple(angles))

    @classmethod
    def from_array(cls, array):
        return cls(tuple(float(a) for a in np.asarray(array, dtype=float).ravel()))

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i):
        return self.angles[i]

    @property
    def dim(self):
        return len(self.angles)

    def as_array(self):
        return np.array(self.angles, dtype=float)

    def shifted(self, delta):
        """Add delta (array of radians) coordinate-wise."""
        return JointAngles.from_array(self.as_array() + np.asarray(delta, dtype=float))

    def __repr__(self):
        return "JointAngles(%s)" % ", ".join("%.6g" % a for a in self.angles)


def check_same_dim(c1, c2):
    if len(c1) != len(c2):
        raise DimensionError("Configurations have %d and %d coordinates" % (len(c1), len(c2)))


def torus_distance(c1, c2):
    """Max over coordinates of the geodesic circle distance."""
    check_same_dim(c1, c2)
    a = c1.as_array() if isinstance(c1, JointAngles) else np.asarray(c1, dtype=float)
    b = c2.as_array() if isinstance(c2, JointAngles) else np.asarray(c2, dtype=float)
    return float(np.max(circle_distance(a, b)))
