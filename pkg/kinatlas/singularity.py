# -*- coding: utf-8 -*-
"""
Regular and singular configurations and values.

rank_at is numerical and works for every mechanism; is_regular_value and singular_locus are the analytic rules of the
individual mechanisms.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from kinatlas.core.angles import JointAngles
from kinatlas.mechanisms import (SingleRevolute, TorusIdentity, PlanarArm, UniversalJoint, TripleRollWrist,
                                 Serial6DOF)
from kinatlas.mechanisms.base import as_config
from kinatlas.verify.sampling import sample_rng, uniform_config
from kinatlas.errors import InvalidInput, Unsupported
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularityReport:
    config: JointAngles
    rank: int
    full_rank: bool
    # smallest singular value of the Jacobian
    margin: float

    def to_json(self):
        return {'config': list(self.config), 'rank': self.rank, 'full_rank': self.full_rank, 'margin': self.margin}


def rank_at(mech, c, tol=None):
    """Numerical rank: singular values above tol times the largest one."""
    tol = TOLERANCES.rank if tol is None else tol
    if not tol > 0.0:
        raise InvalidInput("Rank tolerance must be positive, got %r" % tol)
    c = as_config(mech, c)
    j = mech.jacobian(c)
    sv = j.singular_values()
    rank = int(np.sum(sv > tol * sv[0])) if sv[0] > 0.0 else 0
    return RegularityReport(c, rank, rank == min(j.shape), float(sv[-1]))


def is_regular_value(mech, w, tol=None):
    tol = TOLERANCES.singular_value if tol is None else tol
    mech.check_target(w)
    if isinstance(mech, (SingleRevolute, TorusIdentity)):
        return True
    if isinstance(mech, UniversalJoint):
        return UniversalJoint.pole_distance(w) > tol
    if isinstance(mech, TripleRollWrist):
        return TripleRollWrist.tilt(w) > tol
    if isinstance(mech, PlanarArm):
        return all(abs(w.radius - r) > tol for r in mech.critical_radii())
    raise Unsupported("No analytic regular-value rule for %s; sample rank_at instead" % mech.kind)


@dataclass(frozen=True)
class SingularLocus:
    """
    Membership predicate of the singular configurations.

    `distance` is an analytic proxy for the distance to the locus (zero on it); `contains` thresholds it.
    """
    description: str
    distance: Callable
    tol: float = 1e-9

    def contains(self, c):
        return self.distance(c) < self.tol

    def __call__(self, c):
        return self.contains(c)

    def to_json(self):
        return {'description': self.description, 'tolerance': self.tol}


def _never(c):
    return math.inf


def singular_locus(mech, tol=None):
    tol = TOLERANCES.singular_value if tol is None else tol
    if isinstance(mech, Serial6DOF):
        raise Unsupported("No analytic singular locus for %s" % mech.kind)
    if isinstance(mech, SingleRevolute):
        return SingularLocus("empty: F(theta) = %d theta is a covering map" % mech.ratio, _never, tol)
    if isinstance(mech, TorusIdentity):
        return SingularLocus("empty: the identity of T^%d" % mech.config_dim, _never, tol)
    if isinstance(mech, UniversalJoint):
        return SingularLocus("{(theta_1, theta_2) : theta_2 in {pi/2, 3pi/2}} (gimbal lock at N and S)",
                             lambda c: abs(math.cos(c[1])), tol)
    if isinstance(mech, TripleRollWrist):
        return SingularLocus("T x {0, pi} x T, mapping onto the circles Rz(phi) and Rz(psi) Rx(pi)",
                             lambda c: abs(math.sin(c[1])), tol)
    if isinstance(mech, PlanarArm):
        n = mech.config_dim
        joints = "theta_2" if n == 2 else "theta_2, ..., theta_%d" % n
        return SingularLocus("{%s in {0, pi}}: all links parallel, critical radii %s"
                             % (joints, ", ".join("%g" % r for r in mech.critical_radii())),
                             lambda c: max(abs(math.sin(a)) for a in list(c)[1:]), tol)
    raise Unsupported("No analytic singular locus for %s" % mech.kind)


def locus_sample(mech, rng):
    """A random configuration on the singular locus, or None when the locus is empty."""
    c = rng.uniform(0.0, 2.0 * math.pi, size=mech.config_dim)
    if isinstance(mech, UniversalJoint):
        c[1] = rng.choice([0.5 * math.pi, 1.5 * math.pi])
    elif isinstance(mech, TripleRollWrist):
        c[1] = rng.choice([0.0, math.pi])
    elif isinstance(mech, PlanarArm):
        c[1:] = rng.choice([0.0, math.pi], size=mech.config_dim - 1)
    else:
        return None
    return JointAngles.from_array(c)


def check_classification(mech, samples, seed=0, band=None):
    """
    Compare singular_locus with rank_at on `samples` random configurations and as many constructed locus members.
    Configurations whose locus distance lies within `band` (but off the locus) are skipped.
    """
    band = TOLERANCES.margin_band if band is None else band
    locus = singular_locus(mech)
    counts = {'checked': 0, 'skipped': 0, 'singular': 0, 'disagreements': 0}
    witnesses = []
    for i in range(samples):
        rng = sample_rng(seed, i)
        candidates = [uniform_config(mech.config_dim, rng), locus_sample(mech, rng)]
        for c in candidates:
            if c is None:
                continue
            d = locus.distance(c)
            on_locus = locus.contains(c)
            if not on_locus and d < band:
                counts['skipped'] += 1
                continue
            counts['checked'] += 1
            report = rank_at(mech, c)
            counts['singular'] += int(on_locus)
            if on_locus == report.full_rank:
                counts['disagreements'] += 1
                witnesses.append(report.to_json())
    logger.info("Singularity classification of %s: %d disagreements in %d checks"
                % (mech.kind, counts['disagreements'], counts['checked']))
    return dict(counts, mechanism=mech.kind, locus=locus.description, witnesses=witnesses[:10])
