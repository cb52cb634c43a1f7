# -*- coding: utf-8 -*-
"""
The atlases of the concrete mechanisms.

    circle / single revolute (ratio k)   2 charts    lifted circle planner
    single revolute on an arc            2 charts
    planar arm with n links              n + 1       pullback of the T^n planner along the elbow-down section
    two equal links                      5           + 2 charts for targets at the origin
    universal joint                      5           3 regular charts + 2 pole charts
    triple-roll wrist                    7           4 regular charts + 3 charts over the singular circles
"""
import math
import logging

import numpy as np

from kinatlas.core.angles import JointAngles, TWO_PI, wrap_pi, circle_distance
from kinatlas.core.workspace import Planar, Circle, Rotation, Query
from kinatlas.core.rotations import rot_x, rot_z
from kinatlas.core.paths import MotionPath, MIN_SAMPLES
from kinatlas.mechanisms import (Branch, SingleRevolute, TorusIdentity, PlanarArm, UniversalJoint, TripleRollWrist,
                                 NORTH, SOUTH)
from kinatlas.roadmaps.base import PartialRoadmap, Atlas
from kinatlas.roadmaps.torus import identity_torus_atlas, circle_work_atlas, antipodal_mask, torus_step, torus_margin
from kinatlas.roadmaps.combinators import (Section, section_pullback, lift_pullback, retargeted_atlas, universal_flip,
                                           wrist_flip)
from kinatlas.errors import InvalidInput, Unsupported
from kinatlas.settings import TOLERANCES

logger = logging.getLogger(__name__)


def single_revolute_atlas(ratio=2):
    mech = SingleRevolute(ratio)
    return lift_pullback(circle_work_atlas(), mech, label="single_revolute(k=%d)" % mech.ratio)


def circle_atlas():
    """The two-chart planner of the circle, as the atlas of the identity F(theta) = theta."""
    return lift_pullback(circle_work_atlas(), SingleRevolute(1), label="circle")


def interval_revolute_atlas(ratio, theta_max):
    """
    Transmission of ratio k behind a joint confined to [-theta_max, theta_max].

    The arc maps onto the whole circle once pi/k < theta_max, yet F has no continuous section there. Chart 0 aims at
    the preimage u/k, u = wrap(w) in [-pi, pi), and excludes w = pi; chart 1 aims at (pi + wrap(w - pi))/k on a window
    around pi. Both targets lie inside the arc and plans move linearly, so paths never leave it.
    """
    mech = SingleRevolute(ratio, theta_max)
    k = mech.ratio
    if k < 2 or not math.pi / k < mech.theta_max:
        raise InvalidInput("Interval atlas needs k >= 2 and pi/k < theta_max < pi, got k=%d, theta_max=%g"
                           % (k, mech.theta_max))
    eps = TOLERANCES.domain
    half_window = (k * mech.theta_max - math.pi) / 2.0

    def linear_plan(q, goal):
        s = float(wrap_pi(q.config[0]))
        return MotionPath.linear(q.config, [goal - s], MIN_SAMPLES)

    def principal_domain(q):
        return mech.allows(q.config) and abs(math.pi - abs(float(wrap_pi(q.target.theta)))) > eps

    def principal_plan(q):
        return linear_plan(q, float(wrap_pi(q.target.theta)) / k)

    def window_domain(q):
        return mech.allows(q.config) and abs(float(wrap_pi(q.target.theta - math.pi))) < half_window

    def window_plan(q):
        return linear_plan(q, (math.pi + float(wrap_pi(q.target.theta - math.pi))) / k)

    def window_probe(rng, target=None):
        return Query(JointAngles.of(rng.uniform(-mech.theta_max, mech.theta_max)), Circle(math.pi))

    charts = [
        PartialRoadmap("arc/principal", principal_domain, principal_plan,
                       margin=lambda q: abs(math.pi - abs(float(wrap_pi(q.target.theta))))),
        PartialRoadmap("arc/window", window_domain, window_plan, probe=window_probe,
                       margin=lambda q: half_window - abs(float(wrap_pi(q.target.theta - math.pi)))),
    ]
    return Atlas(mech, charts, "[-%g, %g] x T" % (mech.theta_max, mech.theta_max),
                 label="interval_revolute(k=%d)" % k)


def _planar_radii(mech):
    r1, r2 = mech.lengths[0], sum(mech.lengths[1:])
    outer = r1 + r2
    return abs(r1 - r2), outer, 1e-9 * outer


def elbow_down_section(mech):
    """
    The elbow-down inverse on the reachable annulus. With equal radii the origin is reachable but the inverse has
    no limit there (theta_1 follows the approach direction), so the disc of radius `slack` is left out.
    """
    if mech.config_dim > 2 and not mech.annulus:
        raise Unsupported("A %d-link arm without a long first link has no straightened-arm section"
                          % mech.config_dim)
    inner, outer, slack = _planar_radii(mech)
    if inner > slack:
        return Section.branch(mech, Branch.PRIMARY, domain=lambda w: inner - slack <= w.radius <= outer + slack,
                              label="elbow-down")
    return Section.branch(mech, Branch.PRIMARY, domain=lambda w: slack < w.radius <= outer + slack,
                          label="elbow-down", margin=lambda w: w.radius - slack)


def planar_origin_charts(mech):
    """
    Targets at the origin of an equal-radii two-link arm: the preimage is the folded circle theta_2 = pi.
    O1: slide theta_2 linearly to pi, theta_1 fixed, from anywhere but theta_2 = 0.
    O2: from theta_2 = 0, the fixed half turn.
    """
    _, _, slack = _planar_radii(mech)
    eps = TOLERANCES.domain

    def at_origin(q):
        return q.target.radius <= slack

    def o1_domain(q):
        return at_origin(q) and float(circle_distance(q.config[1], 0.0)) > eps

    def o1_plan(q):
        return MotionPath.linear(q.config, [0.0, math.pi - float(q.config[1])], MIN_SAMPLES)

    def o2_domain(q):
        return at_origin(q) and float(circle_distance(q.config[1], 0.0)) <= eps

    def o2_plan(q):
        return MotionPath.linear(q.config, [0.0, math.pi - float(wrap_pi(q.config[1]))], MIN_SAMPLES)

    def probe(rng, target=None, folded=False):
        t2 = 0.0 if folded else rng.uniform(0.0, TWO_PI)
        return Query(JointAngles.of(rng.uniform(0.0, TWO_PI), t2), target if target is not None else Planar(0.0, 0.0))

    def shift(q, delta, rng, both):
        s = delta * rng.choice([-1.0, 1.0], size=2)
        if not both:
            s[1] = 0.0
        return Query(q.config.shifted(s), q.target)

    o1 = PartialRoadmap("origin/linear", o1_domain, o1_plan,
                        probe=lambda rng, target=None: probe(rng, target),
                        neighbour=lambda q, delta, rng: shift(q, delta, rng, True),
                        margin=lambda q: float(circle_distance(q.config[1], 0.0)))
    o2 = PartialRoadmap("origin/fold", o2_domain, o2_plan,
                        probe=lambda rng, target=None: probe(rng, target, folded=True),
                        neighbour=lambda q, delta, rng: shift(q, delta, rng, False))
    return [o1, o2]


def planar_arm_atlas(lengths):
    mech = lengths if isinstance(lengths, PlanarArm) else PlanarArm(lengths)
    atlas = section_pullback(identity_torus_atlas(mech.config_dim), elbow_down_section(mech),
                             label="planar_arm(%s)" % ", ".join("%g" % r for r in mech.lengths))
    charts = list(atlas.charts)
    inner, _, slack = _planar_radii(mech)
    if inner <= slack:
        charts += planar_origin_charts(mech)
    return Atlas(mech, charts, "C x W", label=atlas.label)


def universal_regular_section(mech, branch=Branch.PRIMARY):
    eps = TOLERANCES.domain
    return Section.branch(mech, branch, domain=lambda w: UniversalJoint.pole_distance(w) > eps,
                          label="latitude-%s" % branch.value, margin=UniversalJoint.pole_distance)


def _pole(w):
    """+1 at N, -1 at S, 0 elsewhere."""
    if UniversalJoint.pole_distance(w) > TOLERANCES.domain:
        return 0
    return 1 if w.v[2] > 0.0 else -1


# Latitude excluded by the linear pole plans (the opposite pole), and its replacement semicircle start.
_OPPOSITE = {1: 1.5 * math.pi, -1: 0.5 * math.pi}


def _pole_probe(rng, target, exact_opposite):
    w = target if target is not None else (NORTH if rng.integers(2) == 0 else SOUTH)
    t1 = rng.uniform(0.0, TWO_PI)
    t2 = _OPPOSITE[_pole(w)] if exact_opposite else rng.uniform(0.0, TWO_PI)
    return Query(JointAngles.of(t1, t2), w)


def universal_pole_charts(mech):
    """
    P1: slide the latitude linearly to +-pi/2 along the arc avoiding the opposite pole.
    P2: from the opposite pole's latitude, the fixed counterclockwise semicircle.
    N and S queries are disjoint, so each chart serves both poles.
    """
    eps = TOLERANCES.domain

    def p1_domain(q):
        pole = _pole(q.target)
        return pole != 0 and float(circle_distance(q.config[1], _OPPOSITE[pole])) > eps

    def p1_plan(q):
        t2 = q.config[1]
        if _pole(q.target) > 0:
            start = t2 if t2 < 1.5 * math.pi else t2 - TWO_PI
            goal = 0.5 * math.pi
        else:
            start = t2 if t2 > 0.5 * math.pi else t2 + TWO_PI
            goal = 1.5 * math.pi
        return MotionPath.linear(q.config, [0.0, goal - start], MIN_SAMPLES)

    def p2_domain(q):
        pole = _pole(q.target)
        return pole != 0 and float(circle_distance(q.config[1], _OPPOSITE[pole])) <= eps

    def p2_plan(q):
        return MotionPath.linear(q.config, [0.0, math.pi], MIN_SAMPLES)

    def shift(q, delta, rng, both):
        s = delta * rng.choice([-1.0, 1.0], size=2)
        if not both:
            s[1] = 0.0
        return Query(q.config.shifted(s), q.target)

    p1 = PartialRoadmap("pole/linear", p1_domain, p1_plan,
                        probe=lambda rng, target=None: _pole_probe(rng, target, False),
                        neighbour=lambda q, delta, rng: shift(q, delta, rng, True),
                        margin=lambda q: float(circle_distance(q.config[1], _OPPOSITE[_pole(q.target)])))
    p2 = PartialRoadmap("pole/semicircle", p2_domain, p2_plan,
                        probe=lambda rng, target=None: _pole_probe(rng, target, True),
                        neighbour=lambda q, delta, rng: shift(q, delta, rng, False))
    return [p1, p2]


def universal_atlas(radius=1.0):
    mech = radius if isinstance(radius, UniversalJoint) else UniversalJoint(radius)
    # plans aim at the far branch I'(w), then flip back so every endpoint is I(w)
    pulled = section_pullback(identity_torus_atlas(2), universal_regular_section(mech, Branch.SECONDARY))
    retargeted = retargeted_atlas(pulled, universal_flip(toward=Branch.SECONDARY))
    regular = section_pullback(retargeted, universal_regular_section(mech))
    charts = list(regular.charts) + universal_pole_charts(mech)
    logger.info("Built the universal joint atlas with %d charts" % len(charts))
    return Atlas(mech, charts, "C x S^2", label="universal(R=%g)" % mech.radius)


def wrist_regular_section(mech, branch=Branch.PRIMARY):
    eps = TOLERANCES.domain
    return Section.branch(mech, branch, domain=lambda w: TripleRollWrist.tilt(w) > eps,
                          label="euler-%s" % branch.value, margin=TripleRollWrist.tilt)


def _singular_coordinates(q):
    """
    (circle, pair): circle 0 for Rz(phi), 1 for Rz(psi) Rx(pi); pair = (theta_2, theta_1 + theta_3 - phi) or
    (theta_2 - pi, theta_1 - theta_3 - psi). The preimage of the target is pair = (0, 0).
    """
    t1, t2, t3 = q.config
    angle = TripleRollWrist.singular_angle(q.target)
    if q.target.matrix[2, 2] > 0.0:
        return 0, np.array([t2, t1 + t3 - angle])
    return 1, np.array([t2 - math.pi, t1 - t3 - angle])


def wrist_singular_chart(j):
    """Queries with singular targets whose pair coordinates have exactly j antipodal entries relative to (0, 0)."""
    eps = TOLERANCES.domain
    origin = np.zeros(2)

    def domain(q):
        if TripleRollWrist.tilt(q.target) > eps:
            return False
        _, pair = _singular_coordinates(q)
        return int(np.sum(antipodal_mask(pair, origin))) == j

    def plan(q):
        circle, pair = _singular_coordinates(q)
        step = torus_step(pair, origin, antipodal_mask(pair, origin))
        third = step[1] if circle == 0 else -step[1]
        return MotionPath.linear(q.config, [0.0, step[0], third], MIN_SAMPLES)

    def probe(rng, target=None):
        if target is None:
            angle = rng.uniform(0.0, TWO_PI)
            circle = int(rng.integers(2))
            m = rot_z(angle) if circle == 0 else rot_z(angle) @ rot_x(math.pi)
            target = Rotation(m)
        circle, _ = _singular_coordinates(Query(JointAngles.of(0.0, 0.0, 0.0), target))
        angle = TripleRollWrist.singular_angle(target)
        pair = rng.uniform(0.0, TWO_PI, size=2)
        pair[rng.choice(2, size=j, replace=False)] = math.pi
        t1 = rng.uniform(0.0, TWO_PI)
        if circle == 0:
            c = (t1, pair[0], angle + pair[1] - t1)
        else:
            c = (t1, pair[0] + math.pi, t1 - angle - pair[1])
        return Query(JointAngles(c), target)

    def neighbour(q, delta, rng):
        s = delta * rng.choice([-1.0, 1.0])
        return Query(q.config.shifted([s, 0.0, 0.0]), Rotation(rot_z(s) @ q.target.matrix))

    def margin(q):
        _, pair = _singular_coordinates(q)
        return torus_margin(pair, origin, antipodal_mask(pair, origin))

    return PartialRoadmap("wrist-singular/antipodal=%d" % j, domain, plan, probe=probe, neighbour=neighbour,
                          margin=margin)


def wrist_atlas():
    mech = TripleRollWrist()
    pulled = section_pullback(identity_torus_atlas(3), wrist_regular_section(mech, Branch.SECONDARY))
    retargeted = retargeted_atlas(pulled, wrist_flip(toward=Branch.SECONDARY))
    regular = section_pullback(retargeted, wrist_regular_section(mech))
    charts = list(regular.charts) + [wrist_singular_chart(j) for j in range(3)]
    logger.info("Built the wrist atlas with %d charts" % len(charts))
    return Atlas(mech, charts, "C x SO(3)", label="triple_roll_wrist")


def default_atlas(mech):
    if isinstance(mech, SingleRevolute):
        if mech.theta_max is not None:
            return interval_revolute_atlas(mech.ratio, mech.theta_max)
        return single_revolute_atlas(mech.ratio)
    if isinstance(mech, TorusIdentity):
        return identity_torus_atlas(mech.config_dim)
    if isinstance(mech, PlanarArm):
        return planar_arm_atlas(mech)
    if isinstance(mech, UniversalJoint):
        return universal_atlas(mech)
    if isinstance(mech, TripleRollWrist):
        return wrist_atlas()
    raise Unsupported("No atlas is implemented for %s" % mech.kind)
