# -*- coding: utf-8 -*-
"""
Revolute joints driving circle-valued end-effectors: a single joint behind a transmission of integer ratio k, and the
identity map of the n-torus.
"""
import math
import logging

import numpy as np

from kinatlas.core.angles import JointAngles, angle_normalize, wrap_pi
from kinatlas.core.workspace import Circle, Torus
from kinatlas.mechanisms.base import Mechanism, Branch
from kinatlas.errors import InvalidInput, NoGlobalInverse, Unreachable

logger = logging.getLogger(__name__)


class SingleRevolute(Mechanism):
    """
    F(theta) = k * theta on the circle.

    With theta_max set, the joint only moves in the arc [-theta_max, theta_max] (for instance because of wiring), which
    restricts the configurations that queries may start from and paths may pass through.
    """
    kind = 'single_revolute'
    config_dim = 1
    workspace_kind = 'circle'
    covering = True

    def __init__(self, ratio=1, theta_max=None):
        if int(ratio) != ratio or ratio < 1:
            raise InvalidInput("Transmission ratio must be an integer >= 1, got %r" % ratio)
        self.ratio = int(ratio)
        if theta_max is not None:
            theta_max = float(theta_max)
            if not 0.0 < theta_max < math.pi:
                raise InvalidInput("theta_max must lie in (0, pi), got %r" % theta_max)
        self.theta_max = theta_max

    def _forward(self, theta):
        return Circle(self.ratio * theta[0])

    def _jacobian(self, theta):
        return np.array([[float(self.ratio)]])

    def allows(self, c, tol=1e-9):
        """Whether the configuration lies in the permitted arc."""
        if self.theta_max is None:
            return True
        return abs(float(wrap_pi(c[0]))) <= self.theta_max + tol

    def inverse(self, w, branch=Branch.PRIMARY):
        if self.ratio != 1:
            raise NoGlobalInverse("F(theta) = %d theta has no continuous inverse; use an atlas" % self.ratio)
        if not self.allows((w.theta,)):
            raise Unreachable("%r is outside the permitted arc" % w)
        return JointAngles.of(w.theta)

    def principal_preimage(self, w):
        """theta/k for theta in [0, 2pi): a preimage of w, discontinuous where theta wraps around."""
        return JointAngles.of(angle_normalize(w.theta) / self.ratio)

    def to_json(self):
        js = {'kind': self.kind, 'ratio': self.ratio}
        if self.theta_max is not None:
            js['theta_max'] = self.theta_max
        return js


class TorusIdentity(Mechanism):
    """The identity map of T^n, whose atlases are the basic motion planners of the torus."""
    kind = 'torus'
    workspace_kind = 'torus'
    covering = True
    ratio = 1

    def __init__(self, n):
        if int(n) != n or n < 1:
            raise InvalidInput("Torus dimension must be a positive integer, got %r" % n)
        self.config_dim = int(n)

    def _forward(self, theta):
        return Torus(JointAngles.from_array(theta))

    def _jacobian(self, theta):
        return np.eye(self.config_dim)

    def inverse(self, w, branch=Branch.PRIMARY):
        return w.angles

    def to_json(self):
        return {'kind': self.kind, 'n': self.config_dim}
