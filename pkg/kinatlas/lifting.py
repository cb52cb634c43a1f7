# -*- coding: utf-8 -*-
"""
Path lifting: given c0 and a workspace path alpha starting at F(c0), find a configuration path c(t) with c(0) = c0
and F(c(t)) = alpha(t).

The numerical lift is a predictor-corrector continuation. The predictor integrates the minimum-norm joint velocity
dc/dt = J(c)^+ alpha'(t) with classical Runge-Kutta steps, the corrector runs Newton iterations on F(c) = alpha(t).
Covering maps (F(theta) = k theta, identity of the torus) have the closed-form lift c0 + (track(alpha) - track(0))/k.
"""
import logging
from dataclasses import dataclass

import numpy as np

from kinatlas.core.angles import JointAngles
from kinatlas.core.paths import MotionPath
from kinatlas.core.workspace import work_distance
from kinatlas.mechanisms.base import as_config
from kinatlas.errors import InvalidInput, SingularEncounter, NewtonDivergence, StartMismatch
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftOptions:
    step_count: int = 256
    newton_tol: float = 1e-10
    newton_max_iters: int = 20
    # abort threshold on the smallest singular value of the Jacobian
    min_singular_value: float = 1e-6

    def __post_init__(self):
        if int(self.step_count) != self.step_count or self.step_count < 16:
            raise InvalidInput("step_count must be an integer >= 16, got %r" % self.step_count)
        if int(self.newton_max_iters) != self.newton_max_iters or self.newton_max_iters < 1:
            raise InvalidInput("newton_max_iters must be a positive integer")
        if not (self.newton_tol > 0.0 and self.min_singular_value > 0.0):
            raise InvalidInput("Lift tolerances must be positive")


DEFAULT_LIFT = LiftOptions()


def pseudo_inverse(mech, theta, min_singular_value):
    """J^+ at theta from the SVD; raises SingularEncounter close to a singular configuration."""
    j = mech._jacobian(theta)
    u, s, vt = np.linalg.svd(j, full_matrices=True)
    if s[-1] < min_singular_value:
        raise SingularEncounter("Jacobian singular value %.3g below %.3g at %r"
                                % (s[-1], min_singular_value, JointAngles.from_array(theta)))
    k = len(s)
    return vt[:k].T @ np.diag(1.0 / s) @ u[:, :k].T


def _correct(mech, theta, target, opts):
    for _ in range(opts.newton_max_iters):
        current = mech._forward(theta)
        if work_distance(current, target) < opts.newton_tol:
            return theta
        theta = theta + pseudo_inverse(mech, theta, opts.min_singular_value) @ mech.residual(current, target)
    error = work_distance(mech._forward(theta), target)
    if error < opts.newton_tol:
        return theta
    raise NewtonDivergence("Newton correction stalled at residual %.3g after %d iterations"
                           % (error, opts.newton_max_iters))


def lift(mech, c0, alpha, opts=None):
    opts = DEFAULT_LIFT if opts is None else opts
    c0 = as_config(mech, c0)
    mech.check_target(alpha.start)
    start_error = work_distance(mech.forward(c0), alpha.start)
    if start_error > TOLERANCES.glue:
        raise StartMismatch("Path starts %.3g away from F(c0)" % start_error)

    def rate(theta, t):
        v = mech.tangent_scale * alpha.velocity(t)
        return pseudo_inverse(mech, theta, opts.min_singular_value) @ v

    h = 1.0 / opts.step_count
    theta = c0.as_array()
    values = [theta]
    for k in range(opts.step_count):
        t = k * h
        k1 = rate(theta, t)
        k2 = rate(theta + 0.5 * h * k1, t + 0.5 * h)
        k3 = rate(theta + 0.5 * h * k2, t + 0.5 * h)
        k4 = rate(theta + h * k3, t + h)
        predicted = theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t_next = 1.0 if k == opts.step_count - 1 else (k + 1) * h
        theta = _correct(mech, predicted, alpha(t_next), opts)
        values.append(theta)
    logger.debug("Lifted %r from %r in %d steps" % (alpha, c0, opts.step_count))
    return MotionPath.from_unwrapped(np.linspace(0.0, 1.0, opts.step_count + 1), np.array(values))


def covering_lift(mech, c0, alpha):
    """Exact lift for covering maps, sampled at alpha's sample times."""
    c0 = as_config(mech, c0)
    mech.check_target(alpha.start)
    start_error = work_distance(mech.forward(c0), alpha.start)
    if start_error > TOLERANCES.glue:
        raise StartMismatch("Path starts %.3g away from F(c0)" % start_error)
    track = alpha.angle_track()
    values = c0.as_array()[None, :] + (track - track[0]) / mech.ratio
    values[0] = c0.as_array()
    return MotionPath.from_unwrapped(alpha.times, values)


def lift_any(mech, c0, alpha, opts=None):
    """Closed form for covering maps, continuation otherwise."""
    if mech.covering:
        return covering_lift(mech, c0, alpha)
    return lift(mech, c0, alpha, opts)
