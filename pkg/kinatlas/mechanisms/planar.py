# -*- coding: utf-8 -*-
"""
Planar arms of n revolute joints with link lengths R1..Rn.

    F(theta) = sum_i R_i (cos phi_i, sin phi_i),  phi_i = theta_1 + ... + theta_i
"""
import math
import logging
import itertools

import numpy as np

from kinatlas.core.angles import JointAngles
from kinatlas.core.workspace import Planar
from kinatlas.mechanisms.base import Mechanism, Branch
from kinatlas.errors import InvalidInput, Unreachable, Unsupported

logger = logging.getLogger(__name__)


class PlanarArm(Mechanism):
    kind = 'planar_arm'
    workspace_kind = 'planar'

    def __init__(self, lengths):
        lengths = tuple(float(r) for r in lengths)
        if len(lengths) < 2:
            raise InvalidInput("A planar arm needs at least two links")
        if not all(math.isfinite(r) and r > 0.0 for r in lengths):
            raise InvalidInput("Link lengths must be positive, got %r" % (lengths,))
        self.lengths = lengths
        self.config_dim = len(lengths)

    @property
    def annulus(self):
        """'Long first link': the workspace is an annulus rather than a disk."""
        return self.lengths[0] > sum(self.lengths[1:])

    @property
    def reach(self):
        """(inner, outer) radius of the workspace."""
        outer = sum(self.lengths)
        inner = max(0.0, 2.0 * max(self.lengths) - outer)
        return inner, outer

    def _forward(self, theta):
        phi = np.cumsum(theta)
        r = np.array(self.lengths)
        return Planar(float(np.sum(r * np.cos(phi))), float(np.sum(r * np.sin(phi))))

    def _jacobian(self, theta):
        phi = np.cumsum(theta)
        r = np.array(self.lengths)
        # column j sums over the links from j outwards
        tail_x = np.cumsum((r * np.cos(phi))[::-1])[::-1]
        tail_y = np.cumsum((r * np.sin(phi))[::-1])[::-1]
        return np.vstack([-tail_y, tail_x])

    def critical_radii(self):
        """Radii |R1 +- R2 +- ... +- Rn| of the images of the singular (fully folded or stretched) configurations."""
        first, rest = self.lengths[0], self.lengths[1:]
        radii = set()
        for signs in itertools.product((1.0, -1.0), repeat=len(rest)):
            radii.add(abs(first + sum(s * r for s, r in zip(signs, rest))))
        return sorted(radii)

    def inverse(self, w, branch=Branch.PRIMARY):
        """
        Elbow-down (PRIMARY, theta_2 in [0, pi]) or elbow-up (SECONDARY, theta_2 in [pi, 2pi]) solution.

        Arms with more than two links are reduced to two links by keeping theta_3 = ... = theta_n = 0; this needs the
        annulus case.
        """
        r1 = self.lengths[0]
        r2 = sum(self.lengths[1:])
        if self.config_dim > 2 and not self.annulus:
            raise Unsupported("The straightened-arm inverse of a %d-link arm needs R1 > R2 + ... + Rn"
                              % self.config_dim)
        x, y = w.x, w.y
        cos2 = (x * x + y * y - r1 * r1 - r2 * r2) / (2.0 * r1 * r2)
        if abs(cos2) > 1.0 + 1e-9:
            raise Unreachable("%r is outside the workspace of radii %g..%g" % (w, abs(r1 - r2), r1 + r2))
        theta2 = math.acos(min(1.0, max(-1.0, cos2)))
        if branch == Branch.SECONDARY:
            theta2 = -theta2
        theta1 = math.atan2(y, x) - math.atan2(r2 * math.sin(theta2), r1 + r2 * math.cos(theta2))
        return JointAngles((theta1, theta2) + (0.0,) * (self.config_dim - 2))

    def joint_positions(self, c):
        """Base, elbow(s) and end-effector positions, as an (n+1) x 2 array."""
        phi = np.cumsum(c.as_array())
        steps = np.column_stack([np.array(self.lengths) * np.cos(phi), np.array(self.lengths) * np.sin(phi)])
        return np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])

    def to_json(self):
        return {'kind': self.kind, 'lengths': list(self.lengths)}
