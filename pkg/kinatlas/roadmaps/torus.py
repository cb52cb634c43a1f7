# -*- coding: utf-8 -*-
"""
Motion planners of the torus: the (n+1)-chart atlas of the identity map of T^n and the two-chart planner of the
circle workspace.

A coordinate of a query is antipodal when the goal lies (within the domain tolerance) opposite the start. Chart j holds
the queries with exactly j antipodal coordinates; antipodal coordinates turn counterclockwise by pi, the others take the
shorter arc.
"""
import math
import logging

import numpy as np

from kinatlas.core.angles import JointAngles, TWO_PI, wrap_pi, normalize_array
from kinatlas.core.workspace import Circle, Torus, Query
from kinatlas.core.paths import MotionPath, MIN_SAMPLES
from kinatlas.core.workpaths import WorkPath
from kinatlas.mechanisms import TorusIdentity
from kinatlas.roadmaps.base import PartialRoadmap, Atlas, WorkRoadmap, WorkAtlas
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)


def antipodal_mask(start, goal, eps=None):
    eps = TOLERANCES.domain if eps is None else eps
    d = np.abs(wrap_pi(np.asarray(goal, dtype=float) - np.asarray(start, dtype=float)))
    return np.abs(d - math.pi) < eps


def torus_step(start, goal, mask):
    """Unwrapped displacement: counterclockwise where mask is set, shortest elsewhere."""
    diff = np.asarray(goal, dtype=float) - np.asarray(start, dtype=float)
    return np.where(mask, normalize_array(diff), wrap_pi(diff))


def torus_margin(start, goal, mask):
    """Distance to the nearest change of the antipodal pattern, counted over the non-antipodal coordinates."""
    d = np.abs(np.abs(wrap_pi(np.asarray(goal, dtype=float) - np.asarray(start, dtype=float))) - math.pi)
    free = d[~mask]
    return float(np.min(free)) if free.size else math.inf


def _random_direction(dim, delta, rng):
    d = rng.uniform(-1.0, 1.0, size=dim)
    return delta * d / np.max(np.abs(d))


def torus_chart(n, j):
    """Chart j of the identity atlas of T^n: queries with exactly j antipodal coordinates."""

    def domain(q):
        return int(np.sum(antipodal_mask(q.config.as_array(), q.target.array))) == j

    def plan(q):
        c = q.config.as_array()
        goal = q.target.array
        return MotionPath.linear(q.config, torus_step(c, goal, antipodal_mask(c, goal)), MIN_SAMPLES)

    def probe(rng, target=None):
        if target is None:
            goal = rng.uniform(0.0, TWO_PI, size=n)
        else:
            goal = (target.angles if isinstance(target, Torus) else target).as_array()
        c = rng.uniform(0.0, TWO_PI, size=n)
        chosen = rng.choice(n, size=j, replace=False)
        c[chosen] = goal[chosen] + math.pi
        return Query(JointAngles.from_array(c), Torus(JointAngles.from_array(goal)))

    def neighbour(q, delta, rng):
        s = _random_direction(n, delta, rng)
        return Query(q.config.shifted(s), Torus(q.target.angles.shifted(s)))

    def margin(q):
        c = q.config.as_array()
        goal = q.target.array
        return torus_margin(c, goal, antipodal_mask(c, goal))

    return PartialRoadmap("torus%d/antipodal=%d" % (n, j), domain, plan, probe=probe, neighbour=neighbour,
                          margin=margin)


def identity_torus_atlas(n):
    mech = TorusIdentity(n)
    charts = [torus_chart(n, j) for j in range(n + 1)]
    logger.info("Built the identity atlas of T^%d with %d charts" % (n, len(charts)))
    return Atlas(mech, charts, "T^%d x T^%d" % (n, n), label="torus%d" % n)


def _circle_plan(w0, w1, antipodal):
    step = float(torus_step([w0.theta], [w1.theta], [antipodal])[0])
    return WorkPath.from_function(lambda t: Circle(w0.theta + t * step) if t < 1.0 else w1, MIN_SAMPLES)


def circle_work_chart(antipodal):

    def domain(w0, w1):
        return bool(antipodal_mask([w0.theta], [w1.theta])[0]) == antipodal

    def plan(w0, w1):
        return _circle_plan(w0, w1, antipodal)

    def probe(rng, start=None):
        w0 = Circle(rng.uniform(0.0, TWO_PI)) if start is None else start
        if antipodal:
            return w0, Circle(w0.theta + math.pi)
        return w0, Circle(w0.theta + rng.uniform(-0.9, 0.9) * math.pi)

    def margin(w0, w1):
        if antipodal:
            return math.inf
        return abs(abs(float(wrap_pi(w1.theta - w0.theta))) - math.pi)

    return WorkRoadmap("circle/%s" % ("semicircle" if antipodal else "shortest-arc"), domain, plan, probe=probe,
                       margin=margin)


def circle_work_atlas():
    """Shortest arcs for non-antipodal pairs, counterclockwise semicircles for antipodal ones."""
    return WorkAtlas('circle', [circle_work_chart(False), circle_work_chart(True)], label="circle")
