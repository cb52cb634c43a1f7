# -*- coding: utf-8 -*-
"""
SVG drawings of planar arms following a path.

Coordinates are in units of 1/100 m with the y-axis pointing up (the drawing group is flipped); the view box fits the
drawn joints plus a margin.
"""
import logging

import numpy as np
from jinja2 import Environment, PackageLoader

from kinatlas.core.paths import path_eval
from kinatlas.mechanisms import PlanarArm, SingleRevolute
from kinatlas.errors import Unsupported, DimensionError

logger = logging.getLogger(__name__)

SCALE = 100.0
POSES = 16
PADDING = 10.0


def _fmt(x):
    # avoid "-0.000"
    s = "%.3f" % x
    return "0.000" if s == "-0.000" else s


def _points(xy):
    return " ".join("%s,%s" % (_fmt(x), _fmt(y)) for x, y in xy)


DRAWABLE = (PlanarArm, SingleRevolute)


def check_drawable(mech):
    if not isinstance(mech, DRAWABLE):
        raise Unsupported("SVG export draws planar mechanisms only, not %s" % mech.kind)


def joint_positions(mech, c):
    """Joint positions in metres, base first."""
    check_drawable(mech)
    if isinstance(mech, PlanarArm):
        return mech.joint_positions(c)
    # single revolute: a unit link whose angle is the output angle k theta
    angle = mech.ratio * c[0]
    return np.array([[0.0, 0.0], [np.cos(angle), np.sin(angle)]])


def render_svg(mech, path, poses=POSES):
    check_drawable(mech)
    if path.dim != mech.config_dim:
        raise DimensionError("Path has %d joints, the mechanism %d" % (path.dim, mech.config_dim))
    times = np.linspace(0.0, 1.0, poses)
    drawn = [SCALE * joint_positions(mech, path_eval(path, t)) for t in times]
    trace = [SCALE * joint_positions(mech, path_eval(path, t))[-1] for t in path.times]
    everything = np.vstack(drawn + [np.array(trace)])
    lo = everything.min(axis=0) - PADDING
    hi = everything.max(axis=0) + PADDING
    width, height = hi - lo
    # the drawing group is flipped, so the box spans -hi_y..-lo_y
    view_box = " ".join(_fmt(v) for v in (lo[0], -hi[1], width, height))
    env = Environment(loader=PackageLoader('kinatlas', 'templates'))
    template = env.get_template('arm.svg')
    logger.debug("Rendering %d poses of %s" % (poses, mech.kind))
    return template.render(
        view_box=view_box, width=_fmt(width), height=_fmt(height), title="%s path" % mech.kind,
        base_radius=_fmt(0.02 * SCALE), stroke=_fmt(0.01 * SCALE), dash=_fmt(0.02 * SCALE),
        poses=[{'points': _points(p), 'opacity': _fmt(0.25 + 0.75 * k / max(poses - 1, 1))}
               for k, p in enumerate(drawn)],
        trace=_points(trace)) + "\n"
