# -*- coding: utf-8 -*-
"""
Partial roadmaps, atlases of them and the constructions that turn one atlas into another.
"""
from kinatlas.roadmaps.base import PartialRoadmap, Atlas, Deformation, WorkRoadmap, WorkAtlas, plan
from kinatlas.roadmaps.torus import identity_torus_atlas, circle_work_atlas
from kinatlas.roadmaps.combinators import (Section, section_pullback, section_pushforward, categorical_section,
                                           lift_pullback, roadmap_to_deformation, deformation_to_roadmap,
                                           horizontal_pullback, categorical_roadmap, straight_contraction,
                                           retarget_to_section, retargeted_atlas, atlas_from_sections)
from kinatlas.roadmaps.atlases import (circle_atlas, single_revolute_atlas, interval_revolute_atlas, planar_arm_atlas,
                                       universal_atlas, wrist_atlas, default_atlas)
