# -*- coding: utf-8 -*-
"""
Angles, workspace values, metrics and paths shared by every other part of kinatlas.
"""
from kinatlas.core.angles import JointAngles, angle_normalize, torus_distance, wrap_pi, TWO_PI
from kinatlas.core.workspace import (WorkPoint, Planar, Circle, Torus, Sphere, Rotation, Pose, Query, work_distance,
                                     work_from_json)
from kinatlas.core.paths import MotionPath, path_eval, path_concat, path_reverse, path_distance
from kinatlas.core.workpaths import WorkPath
