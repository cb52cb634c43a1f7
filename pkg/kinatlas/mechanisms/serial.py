# -*- coding: utf-8 -*-
"""
Six-joint serial manipulators given by Denavit-Hartenberg parameters.

Only the forward map is implemented; the Jacobian is numerical. These arms serve Jacobian sampling and the
cohomological bound, not planning.
"""
import math
import logging

import numpy as np

from kinatlas.core.workspace import Pose
from kinatlas.mechanisms.base import Mechanism, Branch
from kinatlas.errors import InvalidInput, Unsupported

logger = logging.getLogger(__name__)

# Standard DH rows (a, alpha, d, theta offset) of a PUMA 560, in meters.
PUMA560_DH = (
    (0.0, math.pi / 2, 0.0, 0.0),
    (0.4318, 0.0, 0.0, 0.0),
    (0.0203, -math.pi / 2, 0.15005, 0.0),
    (0.0, math.pi / 2, 0.4318, 0.0),
    (0.0, -math.pi / 2, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0),
)


def dh_transform(a, alpha, d, theta):
    """Homogeneous transform Rz(theta) Tz(d) Tx(a) Rx(alpha)."""
    ct, st = math.cos(theta), math.sin(theta)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return np.array([[ct, -st * ca, st * sa, a * ct],
                     [st, ct * ca, -ct * sa, a * st],
                     [0.0, sa, ca, d],
                     [0.0, 0.0, 0.0, 1.0]])


class Serial6DOF(Mechanism):
    kind = 'serial_6dof'
    config_dim = 6
    workspace_kind = 'pose'

    def __init__(self, dh=PUMA560_DH):
        rows = np.array(dh, dtype=float)
        if rows.shape != (6, 4) or not np.all(np.isfinite(rows)):
            raise InvalidInput("A 6-DOF arm needs six DH rows (a, alpha, d, theta_offset)")
        rows.setflags(write=False)
        self.dh = rows

    def frames(self, theta):
        """Cumulative base-to-joint transforms, one per joint."""
        t = np.eye(4)
        out = []
        for (a, alpha, d, offset), q in zip(self.dh, theta):
            t = t @ dh_transform(a, alpha, d, q + offset)
            out.append(t)
        return out

    def _forward(self, theta):
        t = self.frames(theta)[-1]
        return Pose(t[:3, 3], t[:3, :3])

    def inverse(self, w, branch=Branch.PRIMARY):
        raise Unsupported("Serial 6-DOF arms carry no inverse kinematic map")

    def to_json(self):
        return {'kind': self.kind, 'dh': [[float(v) for v in row] for row in self.dh]}
