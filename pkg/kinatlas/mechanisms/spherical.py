# -*- coding: utf-8 -*-
"""
Mechanisms with spherical workspaces: the universal joint (pointing on S^2) and the triple-roll wrist (orienting in
SO(3)).
"""
import math
import logging

import numpy as np

from kinatlas.core.angles import JointAngles
from kinatlas.core.workspace import Sphere, Rotation
from kinatlas.core.rotations import rot_x, rot_z
from kinatlas.mechanisms.base import Mechanism, Branch
from kinatlas.errors import InvalidInput, BranchDomainError
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)


class UniversalJoint(Mechanism):
    """
    Two perpendicular revolute joints pointing an arm of length R:

        F(theta_1, theta_2) = (cos theta_1 cos theta_2, sin theta_1 cos theta_2, sin theta_2)

    The workspace value is the unit direction; Jacobians and residuals are scaled by R so that they measure the
    end-effector displacement in meters. The poles N, S (theta_2 = +-pi/2) are the gimbal lock positions.
    """
    kind = 'universal'
    config_dim = 2
    workspace_kind = 'sphere'

    def __init__(self, radius=1.0):
        radius = float(radius)
        if not (math.isfinite(radius) and radius > 0.0):
            raise InvalidInput("Arm length must be positive, got %r" % radius)
        self.radius = radius
        self.tangent_scale = radius

    def _forward(self, theta):
        t1, t2 = theta
        return Sphere.from_vector([math.cos(t1) * math.cos(t2), math.sin(t1) * math.cos(t2), math.sin(t2)])

    def _jacobian(self, theta):
        t1, t2 = theta
        s1, c1, s2, c2 = math.sin(t1), math.cos(t1), math.sin(t2), math.cos(t2)
        return self.radius * np.array([[-s1 * c2, -c1 * s2],
                                       [c1 * c2, -s1 * s2],
                                       [0.0, c2]])

    @staticmethod
    def pole_distance(w):
        """Distance of the direction's projection to the z-axis, i.e. the sine of the angle to the nearer pole."""
        return math.hypot(w.v[0], w.v[1])

    def inverse(self, w, branch=Branch.PRIMARY):
        """Branch I (latitude in (-pi/2, pi/2)) or I' (latitude in (pi/2, 3pi/2)); both exclude the poles."""
        x, y, z = w.v
        rho = math.hypot(x, y)
        if rho <= TOLERANCES.domain:
            raise BranchDomainError("The poles are outside the domain of the %s branch" % branch.value)
        if branch == Branch.PRIMARY:
            return JointAngles.of(math.atan2(y, x), math.atan2(z, rho))
        return JointAngles.of(math.atan2(-y, -x), math.pi - math.atan2(z, rho))

    def to_json(self):
        return {'kind': self.kind, 'radius': self.radius}


# North and south pole.
NORTH = Sphere(np.array([0.0, 0.0, 1.0]))
SOUTH = Sphere(np.array([0.0, 0.0, -1.0]))


class TripleRollWrist(Mechanism):
    """
    Three revolute joints composed as Z-X-Z Euler angles:

        F(theta_1, theta_2, theta_3) = Rz(theta_1) Rx(theta_2) Rz(theta_3)

    Singular configurations are theta_2 in {0, pi}. They map onto two circles of rotations: Rz(phi) (theta_2 = 0,
    phi = theta_1 + theta_3) and Rz(psi) Rx(pi) (theta_2 = pi, psi = theta_1 - theta_3).
    """
    kind = 'triple_roll_wrist'
    config_dim = 3
    workspace_kind = 'rotation'

    def _forward(self, theta):
        return Rotation(rot_z(theta[0]) @ rot_x(theta[1]) @ rot_z(theta[2]))

    def _jacobian(self, theta):
        # body-frame angular velocity per joint rate
        _, b, c = theta
        sb, cb, sc, cc = math.sin(b), math.cos(b), math.sin(c), math.cos(c)
        return np.array([[sb * sc, cc, 0.0],
                         [sb * cc, -sc, 0.0],
                         [cb, 0.0, 1.0]])

    @staticmethod
    def tilt(w):
        """sin of the angle between the rotated and the fixed z-axis; zero exactly on the singular circles."""
        m = w.matrix
        return math.hypot(m[0, 2], m[1, 2])

    @staticmethod
    def singular_angle(w):
        """phi of Rz(phi), or psi of Rz(psi) Rx(pi), for w on (or near) a singular circle."""
        m = w.matrix
        return math.atan2(m[1, 0], m[0, 0])

    def inverse(self, w, branch=Branch.PRIMARY):
        """Euler triple with theta_2 in (0, pi) (PRIMARY) or (pi, 2pi) (SECONDARY); undefined on the singular circles."""
        m = w.matrix
        s = self.tilt(w)
        if s <= TOLERANCES.domain:
            raise BranchDomainError("%r is a singular value of the wrist" % w)
        if branch == Branch.PRIMARY:
            return JointAngles.of(math.atan2(m[0, 2], -m[1, 2]), math.atan2(s, m[2, 2]), math.atan2(m[2, 0], m[2, 1]))
        return JointAngles.of(math.atan2(-m[0, 2], m[1, 2]), math.atan2(-s, m[2, 2]), math.atan2(-m[2, 0], -m[2, 1]))

    def to_json(self):
        return {'kind': self.kind}
