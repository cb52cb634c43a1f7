# -*- coding: utf-8 -*-
"""
Common interface of forward kinematic maps F: T^n -> W.
"""
import enum
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from kinatlas.core.angles import JointAngles
from kinatlas.core.workspace import work_log, check_same_kind
from kinatlas.errors import DimensionError, InvalidInput, VariantMismatch

logger = logging.getLogger(__name__)

# Central difference step used by numerical_jacobian.
JACOBIAN_STEP = 1e-6


class Branch(enum.Enum):
    """
    Which inverse kinematic branch to use.

    PRIMARY is elbow-down for planar arms, latitude in (-pi/2, pi/2) for the universal joint and middle Euler angle in
    (0, pi) for the wrist; SECONDARY is the mirrored branch.
    """
    PRIMARY = 'primary'
    SECONDARY = 'secondary'


@dataclass(frozen=True, eq=False)
class Jacobian:
    matrix: np.ndarray
    evaluated_at: JointAngles

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or not np.all(np.isfinite(m)):
            raise InvalidInput("Jacobian must be a finite matrix")
        m.setflags(write=False)
        object.__setattr__(self, 'matrix', m)

    @property
    def shape(self):
        return self.matrix.shape

    def singular_values(self):
        return np.linalg.svd(self.matrix, compute_uv=False)


def as_config(mech, c):
    """Accept JointAngles or a plain sequence, and check the dimension against mech."""
    if not isinstance(c, JointAngles):
        c = JointAngles.from_array(c)
    if len(c) != mech.config_dim:
        raise DimensionError("%s expects %d joint angles, got %d" % (mech.kind, mech.config_dim, len(c)))
    return c


class Mechanism(ABC):
    """
    A forward kinematic map.

    Subclasses implement `_forward` on a plain angle array (unwrapped values are fine, the maps are periodic) and,
    where they have one, an analytic `_jacobian`. Tangent vectors of W are expressed in the coordinates of
    kinatlas.core.workspace.work_log, multiplied by `tangent_scale`.
    """
    kind = None
    config_dim = None
    workspace_kind = None
    tangent_scale = 1.0
    # F is a covering map with a closed-form lift (see kinatlas.lifting.covering_lift)
    covering = False

    @abstractmethod
    def _forward(self, theta):
        pass

    def _jacobian(self, theta):
        return numerical_jacobian(self, theta).matrix

    def forward(self, c):
        c = as_config(self, c)
        return self._forward(c.as_array())

    def jacobian(self, c):
        c = as_config(self, c)
        return Jacobian(self._jacobian(c.as_array()), c)

    def inverse(self, w, branch=Branch.PRIMARY):
        raise NotImplementedError("%s has no inverse kinematic map" % self.kind)

    def residual(self, w_current, w_target):
        """Tangent vector at w_current pointing to w_target, in Jacobian coordinates."""
        check_same_kind(w_current, w_target)
        return self.tangent_scale * work_log(w_current, w_target)

    def check_target(self, w):
        if getattr(w, 'kind', None) != self.workspace_kind:
            raise VariantMismatch("%s expects a %s target, got %r" % (self.kind, self.workspace_kind, w))

    @abstractmethod
    def to_json(self):
        pass

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, self.to_json())


def numerical_jacobian(mech, c, step=JACOBIAN_STEP):
    """Central finite differences of F at c, in the same tangent coordinates as the analytic Jacobians."""
    theta = c.as_array() if isinstance(c, JointAngles) else np.asarray(c, dtype=float)
    if theta.shape != (mech.config_dim,):
        raise DimensionError("%s expects %d joint angles" % (mech.kind, mech.config_dim))
    w0 = mech._forward(theta)
    columns = []
    for i in range(mech.config_dim):
        e = np.zeros(mech.config_dim)
        e[i] = step
        forward = work_log(w0, mech._forward(theta + e))
        backward = work_log(w0, mech._forward(theta - e))
        columns.append(mech.tangent_scale * (forward - backward) / (2.0 * step))
    return Jacobian(np.column_stack(columns), JointAngles.from_array(theta))


def forward(mech, c):
    return mech.forward(c)


def jacobian(mech, c):
    return mech.jacobian(c)


def inverse(mech, w, branch=Branch.PRIMARY):
    mech.check_target(w)
    return mech.inverse(w, branch)
