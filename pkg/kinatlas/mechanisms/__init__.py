# -*- coding: utf-8 -*-
"""
Forward kinematic maps, their Jacobians and inverse kinematic branches.
"""
from kinatlas.mechanisms.base import Mechanism, Branch, Jacobian, numerical_jacobian, forward, jacobian, inverse
from kinatlas.mechanisms.revolute import SingleRevolute, TorusIdentity
from kinatlas.mechanisms.planar import PlanarArm
from kinatlas.mechanisms.spherical import UniversalJoint, TripleRollWrist, NORTH, SOUTH
from kinatlas.mechanisms.serial import Serial6DOF, PUMA560_DH
from kinatlas.mechanisms.io import mechanism_from_json, mechanism_to_json, load_mechanism, load_query
