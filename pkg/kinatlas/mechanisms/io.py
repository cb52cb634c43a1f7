# -*- coding: utf-8 -*-
"""
Mechanism and query files.

    {"kind": "planar_arm", "lengths": [2.0, 1.0]}
    {"kind": "universal", "radius": 1.0}
    {"kind": "single_revolute", "ratio": 2}
    {"kind": "triple_roll_wrist"}
    {"kind": "serial_6dof", "dh": [[a, alpha, d, theta0], ...]}
    {"kind": "torus", "n": 3}
"""
import json
import logging

from kinatlas.core.workspace import Query
from kinatlas.mechanisms.revolute import SingleRevolute, TorusIdentity
from kinatlas.mechanisms.planar import PlanarArm
from kinatlas.mechanisms.spherical import UniversalJoint, TripleRollWrist
from kinatlas.mechanisms.serial import Serial6DOF, PUMA560_DH
from kinatlas.errors import InvalidInput

logger = logging.getLogger(__name__)


def mechanism_from_json(js):
    if not isinstance(js, dict) or 'kind' not in js:
        raise InvalidInput("Mechanism description needs a 'kind'")
    kind = js['kind']
    try:
        if kind == 'single_revolute':
            return SingleRevolute(js.get('ratio', 1), js.get('theta_max'))
        if kind == 'planar_arm':
            return PlanarArm(js['lengths'])
        if kind == 'universal':
            return UniversalJoint(js.get('radius', 1.0))
        if kind == 'triple_roll_wrist':
            return TripleRollWrist()
        if kind == 'serial_6dof':
            return Serial6DOF(js.get('dh', PUMA560_DH))
        if kind == 'torus':
            return TorusIdentity(js['n'])
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InvalidInput):
            raise
        raise InvalidInput("Malformed %s description: %s" % (kind, e))
    raise InvalidInput("Unknown mechanism kind %r" % kind)


def mechanism_to_json(mech):
    return mech.to_json()


def _read_json(path):
    with open(path, 'r') as f:
        try:
            return json.load(f)
        except ValueError as e:
            raise InvalidInput("%s is not valid JSON: %s" % (path, e))


def load_mechanism(path):
    mech = mechanism_from_json(_read_json(path))
    logger.debug("Loaded %r from %s" % (mech, path))
    return mech


def load_query(path, mech=None):
    """Read a query file, checking it against mech when given."""
    q = Query.from_json(_read_json(path))
    if mech is not None:
        mech.check_target(q.target)
        if len(q.config) != mech.config_dim:
            raise InvalidInput("Query has %d joint angles, %s needs %d" % (len(q.config), mech.kind, mech.config_dim))
    return q
