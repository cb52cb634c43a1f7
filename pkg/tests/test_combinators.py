import math

import numpy as np
import pytest

from kinatlas.core import (JointAngles, Planar, Circle, Sphere, Torus, Query, WorkPath, MotionPath, work_distance,
                           torus_distance, path_distance)
from kinatlas.mechanisms import Branch, PlanarArm, UniversalJoint, SingleRevolute, TripleRollWrist, NORTH, SOUTH
from kinatlas.roadmaps import (identity_torus_atlas, circle_atlas, circle_work_atlas, Section, section_pullback,
                               section_pushforward, categorical_section, lift_pullback, roadmap_to_deformation,
                               horizontal_pullback, categorical_roadmap, straight_contraction, retargeted_atlas,
                               atlas_from_sections, deformation_to_roadmap, retarget_to_section)
from kinatlas.roadmaps.combinators import universal_flip, wrist_flip, query_deformation
from kinatlas.roadmaps.atlases import elbow_down_section, universal_atlas
from kinatlas.roadmaps.base import PartialRoadmap, Deformation
from kinatlas.verify.sampling import uniform_query
from kinatlas.errors import BranchDomainError, CoverageGap, InvalidInput, SingularEncounter


def universal_section(mech, z_min=None):
    if z_min is None:
        domain = lambda w: UniversalJoint.pole_distance(w) > 1e-9
    else:
        domain = lambda w: w.v[2] > z_min
    return Section.branch(mech, Branch.PRIMARY, domain=domain)


def test_section_refuses_points_outside_its_domain():
    section = universal_section(UniversalJoint())
    with pytest.raises(BranchDomainError):
        section(Sphere([0, 0, 1]))
    assert section(Sphere([0, 1, 0]))[0] == pytest.approx(math.pi / 2)


def test_section_pullback_keeps_chart_count():
    mech = PlanarArm([2.0, 1.0])
    section = Section.branch(mech, Branch.SECONDARY, domain=lambda w: 1.0 < w.radius < 3.0)
    atlas = section_pullback(identity_torus_atlas(2), section)
    assert len(atlas) == 3
    q = Query(JointAngles.of(0.4, 0.1), Planar(1.0, 2.0))
    _, path = atlas.plan(q)
    assert path.start == q.config
    assert work_distance(mech.forward(path.end), q.target) < 1e-12
    # elbow-up branch
    assert math.sin(path.end[1]) < 0.0


def test_section_pushforward_plans_in_the_workspace():
    mech = PlanarArm([2.0, 1.0])
    section = Section.branch(mech, Branch.PRIMARY, domain=lambda w: 1.0 < w.radius < 3.0)
    atlas_for_f = section_pullback(identity_torus_atlas(2), section)
    work_atlas = section_pushforward(atlas_for_f, section)
    assert len(work_atlas) == 3
    _, alpha = work_atlas.plan(Planar(2.0, 1.0), Planar(-1.0, 1.5))
    assert alpha.start.x == 2.0 and alpha.start.y == 1.0
    assert work_distance(alpha.end, Planar(-1.0, 1.5)) < 1e-12


def test_categorical_section():
    atlas = circle_atlas()
    section = categorical_section(atlas[0], JointAngles.of(0.5), atlas.mechanism)
    assert section.contains(Circle(1.0))
    assert not section.contains(Circle(0.5 + math.pi))
    assert section(Circle(1.0))[0] == pytest.approx(1.0)


def test_lift_pullback_of_the_circle_planner():
    atlas = lift_pullback(circle_work_atlas(), SingleRevolute(3))
    assert len(atlas) == 2
    q = Query(JointAngles.of(0.1), Circle(0.3 + math.pi))
    i, path = atlas.plan(q)
    # F(0.1) = 0.3, so the target is antipodal
    assert i == 1
    assert path.end[0] == pytest.approx(0.1 + math.pi / 3)


def test_roadmap_to_deformation_and_back():
    atlas = circle_atlas()
    chart = atlas[0]
    d = roadmap_to_deformation(chart)
    assert d.horizontal
    q = Query(JointAngles.of(0.2), Circle(1.2))
    end = d.end(q)
    assert end.target.theta == q.target.theta
    assert work_distance(atlas.mechanism.forward(end.config), q.target) < 1e-12
    r = horizontal_pullback(chart, d)
    path = r.plan(q)
    assert path.start == q.config
    assert path.end[0] == pytest.approx(1.2)


def test_horizontal_pullback_needs_horizontal_deformation():
    mech = PlanarArm([2.0, 1.0])
    contraction = straight_contraction(mech, JointAngles.of(0.0, math.pi / 2), 0.1)
    with pytest.raises(InvalidInput):
        horizontal_pullback(identity_torus_atlas(2)[0], contraction)


def test_categorical_roadmap_on_a_contractible_region():
    mech = PlanarArm([2.0, 1.0])
    r = categorical_roadmap(straight_contraction(mech, JointAngles.of(0.0, math.pi / 2), 0.1), mech)
    q = Query(JointAngles.of(0.05, math.pi / 2 - 0.05), Planar(2.05, 0.95))
    assert r.contains(q)
    assert not r.contains(Query(JointAngles.of(1.0, 1.0), Planar(2.05, 0.95)))
    path = r.plan(q)
    assert path.start == q.config
    assert work_distance(mech.forward(path.end), q.target) < 1e-9


def test_universal_flip_lands_on_the_primary_branch():
    flip = universal_flip()
    c = JointAngles.of(0.5, 2.5)
    end = flip.end(c)
    mech = UniversalJoint()
    assert math.cos(end[1]) > 0.0
    assert work_distance(mech.forward(end), mech.forward(c)) < 1e-12
    assert flip.end(JointAngles.of(0.5, 0.3)) == JointAngles.of(0.5, 0.3)
    assert not flip.contains(JointAngles.of(0.5, math.pi / 2))


def test_wrist_flip_keeps_the_rotation():
    mech = TripleRollWrist()
    c = JointAngles.of(0.4, 4.0, 1.0)
    end = wrist_flip().end(c)
    assert math.sin(end[1]) > 0.0
    assert work_distance(mech.forward(end), mech.forward(c)) < 1e-12


def test_query_deformation_is_horizontal():
    d = query_deformation(universal_flip())
    q = Query(JointAngles.of(0.5, 2.5), Sphere([1, 0, 0]))
    assert d.horizontal
    assert d.end(q).target is q.target


def test_retargeted_atlas_is_an_identity_atlas():
    mech = UniversalJoint()
    pulled = section_pullback(identity_torus_atlas(2), universal_section(mech))
    retargeted = retargeted_atlas(pulled, universal_flip())
    assert len(retargeted) == 3
    c1 = JointAngles.of(0.7, 2.0)
    q = Query(JointAngles.of(0.2, 0.1), Torus(c1))
    _, path = retargeted.plan(q)
    assert path.start == q.config
    assert torus_distance(path.end, c1) < 1e-9


def test_atlas_from_sections_detects_gaps():
    mech = UniversalJoint()
    northern = universal_section(mech, z_min=0.1)
    with pytest.raises(CoverageGap):
        atlas_from_sections([(northern, identity_torus_atlas(2))], mech, samples=50)


def test_atlas_from_a_global_section():
    mech = PlanarArm([2.0, 1.0])
    atlas = atlas_from_sections([(elbow_down_section(mech), identity_torus_atlas(2))], mech, samples=200)
    assert len(atlas) == 3
    q = Query(JointAngles.of(1.0, 2.0), Planar(-1.5, 0.5))
    _, path = atlas.plan(q)
    assert work_distance(mech.forward(path.end), q.target) < 1e-12


def test_deformation_to_roadmap_returns_to_the_target():
    mech = PlanarArm([2.0, 1.0])
    contraction = straight_contraction(mech, JointAngles.of(0.0, math.pi / 2), 0.2)
    r = deformation_to_roadmap(contraction, mech)
    q = Query(JointAngles.of(0.1, math.pi / 2), Planar(1.9, 1.1))
    path = r.plan(q)
    assert path.start == q.config
    assert torus_distance(path(0.5), JointAngles.of(0.0, math.pi / 2)) < 1e-9
    assert work_distance(mech.forward(path.end), q.target) < 1e-9


def test_retarget_to_section_single_chart():
    mech = UniversalJoint()
    pulled = section_pullback(identity_torus_atlas(2), universal_section(mech))
    chart = retarget_to_section(pulled[0], universal_flip(), mech)
    c1 = JointAngles.of(0.4, 2.2)
    q = Query(JointAngles.of(0.5, 0.3), Torus(c1))
    assert chart.contains(q)
    path = chart.plan(q)
    assert path.start == q.config
    assert torus_distance(path.end, c1) < 1e-9
    # the flip is undefined where cos(t2) = 0
    assert not chart.contains(Query(q.config, Torus(JointAngles.of(0.4, math.pi / 2))))


def test_flip_toward_the_far_branch_is_continuous_across_zero_latitude():
    flip = universal_flip(toward=Branch.SECONDARY)
    mech = UniversalJoint()
    below, above = JointAngles.of(0.5, -1e-6), JointAngles.of(0.5, 1e-6)
    assert math.cos(flip.end(below)[1]) < 0.0
    assert work_distance(mech.forward(flip.end(above)), mech.forward(above)) < 1e-12
    assert path_distance(flip.track(below), flip.track(above)) < 1e-5
    assert flip.end(JointAngles.of(0.5, 2.5)) == JointAngles.of(0.5, 2.5)


def test_wrist_flip_toward_the_far_branch():
    mech = TripleRollWrist()
    c = JointAngles.of(0.4, 1.0, 1.0)
    end = wrist_flip(toward=Branch.SECONDARY).end(c)
    assert math.sin(end[1]) < 0.0
    assert work_distance(mech.forward(end), mech.forward(c)) < 1e-12


def regular_universal_query(c, w_config):
    mech = UniversalJoint()
    return Query(JointAngles(c), mech.forward(JointAngles(w_config)))


def test_horizontal_pullback_from_the_far_branch():
    atlas = universal_atlas(1.0)
    mech = atlas.mechanism
    d = query_deformation(universal_flip())
    charts = [horizontal_pullback(atlas[i], d) for i in range(3)]
    q = regular_universal_query((0.5, 2.5), (1.0, 0.5))
    chart = next(ch for ch in charts if ch.contains(q))
    path = chart.plan(q)
    assert path.start == q.config
    assert math.cos(path(0.5)[1]) > 0.0
    assert work_distance(mech.forward(path.end), q.target) < 1e-9


def test_horizontal_pullback_along_the_identity():
    chart = circle_atlas()[0]
    still = Deformation(lambda q: (MotionPath.constant(q.config), WorkPath.constant(q.target)), True, label="id")
    r = horizontal_pullback(chart, still)
    rng = np.random.default_rng(3)
    for _ in range(100):
        q = uniform_query(SingleRevolute(1), rng)
        assert r.contains(q) == chart.contains(q)
        if chart.contains(q):
            assert torus_distance(r.plan(q).end, chart.plan(q).end) == 0.0


def test_horizontal_pullback_with_an_unreachable_landing_zone_is_empty():
    far_side = PartialRoadmap("far side", lambda q: math.cos(q.config[1]) < 0.0,
                              lambda q: MotionPath.constant(q.config))
    r = horizontal_pullback(far_side, query_deformation(universal_flip()))
    rng = np.random.default_rng(4)
    assert not any(r.contains(uniform_query(UniversalJoint(), rng)) for _ in range(200))


def test_universal_chart_survives_the_deformation_round_trip():
    atlas = universal_atlas(1.0)
    mech = atlas.mechanism
    q = regular_universal_query((0.2, 0.1), (1.0, 0.5))
    chart = atlas[atlas.chart_index(q)]
    r = deformation_to_roadmap(roadmap_to_deformation(chart), mech)
    assert r.contains(q)
    path = r.plan(q)
    assert path.start == q.config
    assert work_distance(mech.forward(path.end), q.target) < 1e-6
    assert torus_distance(path.end, chart.plan(q).end) < 1e-9


def test_categorical_roadmap_on_an_equator_ball():
    mech = UniversalJoint()
    c0 = JointAngles.of(0.3, 0.0)
    r = categorical_roadmap(straight_contraction(mech, c0, 0.1), mech)
    q = regular_universal_query((0.35, 0.05), (0.32, -0.04))
    assert r.contains(q)
    path = r.plan(q)
    assert path.start == q.config
    assert torus_distance(path(0.5), c0) < 1e-9
    assert work_distance(mech.forward(path.end), q.target) < 1e-6


def test_categorical_roadmap_at_its_centre_stays_put():
    mech = UniversalJoint()
    c0 = JointAngles.of(0.3, 0.0)
    r = categorical_roadmap(straight_contraction(mech, c0, 0.1), mech)
    path = r.plan(Query(c0, mech.forward(c0)))
    assert np.allclose(path.angles, c0.as_array()[None, :], atol=1e-12)


@pytest.mark.parametrize('build', [deformation_to_roadmap, categorical_roadmap])
def test_workspace_track_through_the_pole_is_singular(build):
    mech = UniversalJoint()
    c0 = JointAngles.of(0.0, math.pi / 2 - 0.2)
    r = build(straight_contraction(mech, c0, 0.5), mech)
    # the geodesic from F(c0) to this target runs over N
    q = Query(c0, mech.forward(JointAngles.of(math.pi, math.pi / 2 - 0.2)))
    assert r.contains(q)
    with pytest.raises(SingularEncounter):
        r.plan(q)


def pole_section(mech, pole):
    c = JointAngles.of(0.0, 0.5 * math.pi if pole is NORTH else 1.5 * math.pi)
    return Section(mech, lambda w: c, lambda w: work_distance(w, pole) <= 1e-9, "pole %s" % pole.v[2],
                   sampler=lambda rng: pole)


def test_atlas_from_the_regular_and_pole_sections():
    mech = UniversalJoint()
    sections = [(universal_section(mech), identity_torus_atlas(2)),
                (pole_section(mech, NORTH), identity_torus_atlas(2)),
                (pole_section(mech, SOUTH), identity_torus_atlas(2))]
    atlas = atlas_from_sections(sections, mech, samples=500)
    assert len(atlas) == 9
    rng = np.random.default_rng(9)
    queries = [uniform_query(mech, rng) for _ in range(200)]
    queries += [Query(JointAngles.of(0.4, 1.0), NORTH), Query(JointAngles.of(2.0, 4.0), SOUTH)]
    for q in queries:
        _, path = atlas.plan(q)
        assert path.start == q.config
        assert work_distance(mech.forward(path.end), q.target) < 1e-9
    with pytest.raises(CoverageGap):
        atlas_from_sections(sections[1:], mech, samples=50)
