# -*- coding: utf-8 -*-
"""
Random configurations, workspace values and queries.

Tori are sampled per-coordinate uniformly, the sphere area-uniformly, SO(3) through uniform unit quaternions and the
planar arm workspace area-uniformly in its annulus. Everything takes an explicit numpy Generator.
"""
import math

import numpy as np

from kinatlas.core.angles import JointAngles, TWO_PI, torus_distance
from kinatlas.core.workspace import (Planar, Circle, Torus, Sphere, Rotation, Query, work_distance, work_perturb)
from kinatlas.core.rotations import random_rotation
from kinatlas.mechanisms import PlanarArm, SingleRevolute


def sample_rng(seed, index, stream=0):
    """Independent generator for sample `index`, so results do not depend on evaluation order."""
    return np.random.default_rng([int(seed), int(index), int(stream)])


def uniform_config(dim, rng):
    return JointAngles.from_array(rng.uniform(0.0, TWO_PI, size=dim))


def uniform_sphere(rng):
    z = rng.uniform(-1.0, 1.0)
    lon = rng.uniform(0.0, TWO_PI)
    rho = math.sqrt(max(0.0, 1.0 - z * z))
    return Sphere.from_vector([rho * math.cos(lon), rho * math.sin(lon), z])


def uniform_work(mech, rng):
    kind = mech.workspace_kind
    if kind == 'circle':
        return Circle(rng.uniform(0.0, TWO_PI))
    if kind == 'torus':
        return Torus(uniform_config(mech.config_dim, rng))
    if kind == 'sphere':
        return uniform_sphere(rng)
    if kind == 'rotation':
        return Rotation(random_rotation(rng))
    if kind == 'planar' and isinstance(mech, PlanarArm):
        inner, outer = mech.reach
        r = math.sqrt(rng.uniform(inner * inner, outer * outer))
        a = rng.uniform(0.0, TWO_PI)
        return Planar(r * math.cos(a), r * math.sin(a))
    return mech.forward(uniform_config(mech.config_dim, rng))


def uniform_query(mech, rng):
    if isinstance(mech, SingleRevolute) and mech.theta_max is not None:
        c = JointAngles.of(rng.uniform(-mech.theta_max, mech.theta_max))
    else:
        c = uniform_config(mech.config_dim, rng)
    return Query(c, uniform_work(mech, rng))


def query_distance(q1, q2):
    """Product (max) metric on queries."""
    return max(torus_distance(q1.config, q2.config), work_distance(q1.target, q2.target))


def perturb_query(q, delta, rng):
    """Move both the configuration and the target by about delta in random directions."""
    d = rng.uniform(-1.0, 1.0, size=len(q.config))
    c = q.config.shifted(delta * d / np.max(np.abs(d)))
    return Query(c, work_perturb(q.target, delta, rng))
