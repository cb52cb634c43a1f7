# -*- coding: utf-8 -*-
"""
Paths in a workspace W, the input of path lifting.

A WorkPath stores time-stamped WorkPoints and interpolates along geodesics between them (straight lines in the plane,
great circles on the sphere, one-parameter subgroups in SO(3), shortest arcs on circles and tori).
"""
import math
import logging

import numpy as np

from kinatlas.core.angles import wrap_pi
from kinatlas.core.paths import MAX_GAP, MIN_SAMPLES
from kinatlas.core.workspace import (Planar, Circle, Torus, Sphere, Pose, check_same_kind, work_distance, work_log,
                                     work_interpolate)
from kinatlas.core import rotations
from kinatlas.errors import InvalidInput, RangeError, VariantMismatch

logger = logging.getLogger(__name__)


def _angular_gap(a, b):
    if isinstance(a, Planar):
        return 0.0
    if isinstance(a, Pose):
        return rotations.rotation_angle(a.matrix, b.matrix)
    return work_distance(a, b)


class WorkPath(object):

    def __init__(self, times, points):
        times = np.array(times, dtype=float)
        points = list(points)
        if times.ndim != 1 or len(points) != times.shape[0]:
            raise InvalidInput("WorkPath needs one workspace value per sample time")
        if len(points) < 2:
            raise InvalidInput("WorkPath needs at least two samples")
        if times[0] != 0.0 or times[-1] != 1.0:
            raise InvalidInput("WorkPath times must run from 0 to 1")
        if np.any(np.diff(times) <= 0.0):
            raise InvalidInput("WorkPath times must be strictly increasing")
        for p in points[1:]:
            check_same_kind(points[0], p)

        new_times = [times[0]]
        new_points = [points[0]]
        for i in range(len(points) - 1):
            a, b = points[i], points[i + 1]
            if _angular_gap(a, b) >= math.pi - 1e-12:
                raise InvalidInput("Consecutive WorkPath samples %d and %d are (nearly) antipodal" % (i, i + 1))
            pieces = int(work_distance(a, b) // MAX_GAP) + 1
            for k in range(1, pieces):
                s = k / pieces
                new_times.append(times[i] + s * (times[i + 1] - times[i]))
                new_points.append(work_interpolate(a, b, s))
            new_times.append(times[i + 1])
            new_points.append(b)

        self.times = np.array(new_times)
        self.times.setflags(write=False)
        self.points = tuple(new_points)

    @classmethod
    def constant(cls, w):
        return cls([0.0, 1.0], [w, w])

    @classmethod
    def from_function(cls, fn, samples=MIN_SAMPLES):
        t = np.linspace(0.0, 1.0, samples + 1)
        return cls(t, [fn(s) for s in t])

    @classmethod
    def geodesic(cls, a, b, samples=MIN_SAMPLES):
        check_same_kind(a, b)
        return cls.from_function(lambda s: work_interpolate(a, b, s), samples)

    @property
    def kind(self):
        return self.points[0].kind

    @property
    def start(self):
        return self.points[0]

    @property
    def end(self):
        return self.points[-1]

    def __len__(self):
        return len(self.points)

    def _segment(self, t):
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise RangeError("Path parameter must lie in [0, 1], got %r" % t)
        i = int(np.searchsorted(self.times, t, side='right')) - 1
        return min(max(i, 0), len(self.times) - 2)

    def __call__(self, t):
        i = self._segment(t)
        t0, t1 = self.times[i], self.times[i + 1]
        if t == t0:
            return self.points[i]
        if t == t1:
            return self.points[i + 1]
        return work_interpolate(self.points[i], self.points[i + 1], (t - t0) / (t1 - t0))

    def velocity(self, t):
        """d/dt of the path at t, in the tangent coordinates of work_log at the point self(t)."""
        i = self._segment(t)
        t0, t1 = self.times[i], self.times[i + 1]
        a, b = self.points[i], self.points[i + 1]
        v = work_log(a, b) / (t1 - t0)
        if isinstance(a, Sphere):
            omega = float(np.linalg.norm(v)) * (t1 - t0)
            if omega == 0.0:
                return np.zeros(3)
            u = v / np.linalg.norm(v)
            s = (t - t0) / (t1 - t0) * omega
            return omega / (t1 - t0) * (-math.sin(s) * a.v + math.cos(s) * u)
        return v

    def reversed(self):
        return WorkPath(1.0 - self.times[::-1], self.points[::-1])

    def map(self, fn):
        return WorkPath(self.times, [fn(p) for p in self.points])

    def angle_track(self):
        """Continuous (unwrapped) angle values of a Circle or Torus path, one row per sample."""
        if isinstance(self.start, Circle):
            a = np.array([[p.theta] for p in self.points])
        elif isinstance(self.start, Torus):
            a = np.array([p.angles.as_array() for p in self.points])
        else:
            raise VariantMismatch("Only circle and torus paths have an angle track, not %s" % self.kind)
        return np.vstack([a[:1], a[:1] + np.cumsum(wrap_pi(np.diff(a, axis=0)), axis=0)])

    def __repr__(self):
        return "<WorkPath %s, %d samples>" % (self.kind, len(self))
