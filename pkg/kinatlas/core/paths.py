# -*- coding: utf-8 -*-
"""
Paths in the configuration space T^n.

A MotionPath is a dense, time-stamped sample sequence. Stored angles are normalized; consecutive samples differ by
less than pi in every coordinate, so the path between samples is recovered unambiguously by shortest-gap
unwrapping followed by linear interpolation.
"""
import io
import csv
import math
import logging

import numpy as np

from kinatlas.core.angles import JointAngles, normalize_array, wrap_pi, circle_distance, check_same_dim
from kinatlas.errors import InvalidInput, RangeError, GlueError, DimensionError
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)

# Producers refine their samples until every per-coordinate gap is below this.
MAX_GAP = math.pi / 2

# Chart plans are sampled at least this densely.
MIN_SAMPLES = 64


def _read_only(a):
    a.setflags(write=False)
    return a


def _refine(times, values):
    """Insert linearly interpolated samples wherever a segment moves MAX_GAP or more in some coordinate."""
    gaps = np.max(np.abs(np.diff(values, axis=0)), axis=1)
    if np.all(gaps < MAX_GAP):
        return times, values
    new_times = [times[:1]]
    new_values = [values[:1]]
    for i, gap in enumerate(gaps):
        pieces = int(gap // MAX_GAP) + 1
        s = np.arange(1, pieces + 1) / pieces
        new_times.append(times[i] + s * (times[i + 1] - times[i]))
        new_values.append(values[i] + s[:, None] * (values[i + 1] - values[i]))
        # keep the original sample bit-exact
        new_times[-1][-1] = times[i + 1]
        new_values[-1][-1] = values[i + 1]
    return np.concatenate(new_times), np.concatenate(new_values)


class MotionPath(object):

    def __init__(self, times, angles):
        times = np.array(times, dtype=float)
        angles = normalize_array(np.array(angles, dtype=float))
        if angles.ndim != 2 or angles.shape[0] != times.shape[0]:
            raise InvalidInput("MotionPath needs one configuration per sample time")
        if times.shape[0] < 2:
            raise InvalidInput("MotionPath needs at least two samples")
        if times[0] != 0.0 or times[-1] != 1.0:
            raise InvalidInput("MotionPath times must run from 0 to 1, got %r..%r" % (times[0], times[-1]))
        if np.any(np.diff(times) <= 0.0):
            raise InvalidInput("MotionPath times must be strictly increasing")
        steps = wrap_pi(np.diff(angles, axis=0))
        if np.any(circle_distance(angles[1:], angles[:-1]) >= math.pi):
            raise InvalidInput("Consecutive MotionPath samples must differ by less than pi per coordinate")
        self.times = _read_only(times)
        self.angles = _read_only(angles)
        unwrapped = np.vstack([angles[:1], angles[:1] + np.cumsum(steps, axis=0)])
        self._unwrapped = _read_only(unwrapped)

    @classmethod
    def from_unwrapped(cls, times, values):
        """Build from a continuous real-valued (unwrapped) angle track; refines as needed."""
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        times, values = _refine(times, values)
        return cls(times, values)

    @classmethod
    def constant(cls, c):
        a = c.as_array()
        return cls(np.array([0.0, 1.0]), np.vstack([a, a]))

    @classmethod
    def linear(cls, c, delta, samples=MIN_SAMPLES):
        """c + t * delta, delta given in unwrapped radians."""
        t = np.linspace(0.0, 1.0, samples + 1)
        start = c.as_array()
        values = start[None, :] + t[:, None] * np.asarray(delta, dtype=float)[None, :]
        values[0] = start
        return cls.from_unwrapped(t, values)

    @classmethod
    def from_function(cls, fn, dim, samples=MIN_SAMPLES):
        """Sample an unwrapped track fn(t) -> array of dim angles."""
        t = np.linspace(0.0, 1.0, samples + 1)
        values = np.array([np.asarray(fn(s), dtype=float).reshape(dim) for s in t])
        return cls.from_unwrapped(t, values)

    @property
    def dim(self):
        return self.angles.shape[1]

    @property
    def start(self):
        return JointAngles.from_array(self.angles[0])

    @property
    def end(self):
        return JointAngles.from_array(self.angles[-1])

    def __len__(self):
        return self.times.shape[0]

    def unwrapped_at(self, t):
        """Unwrapped value at t, continuous with the stored track starting at the first sample."""
        i = int(np.searchsorted(self.times, t, side='right')) - 1
        i = min(max(i, 0), len(self.times) - 2)
        t0, t1 = self.times[i], self.times[i + 1]
        s = (t - t0) / (t1 - t0)
        return self._unwrapped[i] + s * (self._unwrapped[i + 1] - self._unwrapped[i])

    def __call__(self, t):
        return path_eval(self, t)

    def sample(self, ts):
        return np.array([self.unwrapped_at(t) for t in ts])

    def to_csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['t'] + ['theta_%d' % (i + 1) for i in range(self.dim)])
        for t, row in zip(self.times, self.angles):
            writer.writerow(['%.12g' % t] + ['%.12g' % a for a in row])
        return out.getvalue()

    def write_csv(self, filename):
        with open(filename, 'w') as f:
            f.write(self.to_csv())

    @classmethod
    def from_csv(cls, text):
        reader = csv.reader(io.StringIO(text))
        rows = [r for r in reader if r]
        if len(rows) < 3:
            raise InvalidInput("Path CSV needs a header and at least two samples")
        header = rows[0]
        if not header or header[0] != 't':
            raise InvalidInput("Path CSV header must start with 't'")
        try:
            data = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float)
        except ValueError as e:
            raise InvalidInput("Malformed path CSV: %s" % e)
        if data.shape[1] != len(header):
            raise InvalidInput("Path CSV rows do not match the header")
        return cls(data[:, 0], data[:, 1:])

    @classmethod
    def read_csv(cls, filename):
        with open(filename, 'r') as f:
            return cls.from_csv(f.read())

    def __repr__(self):
        return "<MotionPath %d samples %r -> %r>" % (len(self), self.start, self.end)


def path_eval(p, t):
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise RangeError("Path parameter must lie in [0, 1], got %r" % t)
    i = int(np.searchsorted(p.times, t))
    if i < len(p.times) and p.times[i] == t:
        return JointAngles.from_array(p.angles[i])
    return JointAngles.from_array(p.unwrapped_at(t))


def path_concat(p, q, tol=None):
    """p then q, each run at double speed."""
    tol = TOLERANCES.glue if tol is None else tol
    if p.dim != q.dim:
        raise DimensionError("Cannot concatenate paths in T^%d and T^%d" % (p.dim, q.dim))
    gap = float(np.max(circle_distance(p.angles[-1], q.angles[0])))
    if gap > tol:
        raise GlueError("Paths do not meet: end and start differ by %g" % gap)
    times = np.concatenate([0.5 * p.times, 0.5 + 0.5 * q.times[1:]])
    angles = np.vstack([p.angles, q.angles[1:]])
    return MotionPath(times, angles)


def path_reverse(p):
    return MotionPath(1.0 - p.times[::-1], p.angles[::-1])


def path_distance(p, q):
    """Sup over time of the torus distance between two paths, evaluated at all breakpoints of both."""
    check_same_dim(p.angles[0], q.angles[0])
    ts = np.union1d(p.times, q.times)
    return float(np.max(circle_distance(p.sample(ts), q.sample(ts))))
