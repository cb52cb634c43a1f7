import math

import numpy as np
import pytest

from kinatlas.core import (JointAngles, Planar, Circle, Sphere, Rotation, Torus, Query, work_distance, wrap_pi,
                           torus_distance)
from kinatlas.core.rotations import rot_x, rot_z
from kinatlas.mechanisms import PlanarArm, UniversalJoint, TripleRollWrist, SingleRevolute, Serial6DOF, NORTH, SOUTH
from kinatlas.roadmaps import (identity_torus_atlas, circle_atlas, single_revolute_atlas, interval_revolute_atlas,
                               planar_arm_atlas, universal_atlas, wrist_atlas, default_atlas, plan)
from kinatlas.verify.sampling import sample_rng
from kinatlas.errors import NoChart, InvalidInput, Unsupported


@pytest.mark.parametrize('build, count', [
    (circle_atlas, 2),
    (lambda: single_revolute_atlas(2), 2),
    (lambda: interval_revolute_atlas(2, 2.0), 2),
    (lambda: identity_torus_atlas(2), 3),
    (lambda: identity_torus_atlas(3), 4),
    (lambda: planar_arm_atlas([2.0, 1.0]), 3),
    (lambda: planar_arm_atlas([3.0, 1.0, 1.0]), 4),
    (lambda: planar_arm_atlas([4.0, 1.0, 1.0, 1.0]), 5),
    (lambda: universal_atlas(1.0), 5),
    # one more than the six charts the singular circles are claimed to need
    (wrist_atlas, 7),
])
def test_chart_counts(build, count):
    assert len(build()) == count


def assert_plan_contract(atlas, q, tol=1e-6):
    i, path = plan(atlas, q)
    assert path.start == q.config
    assert work_distance(atlas.mechanism.forward(path.end), q.target) < tol
    return i, path


def test_torus_charts_count_antipodal_coordinates():
    atlas = identity_torus_atlas(2)
    q = Query(JointAngles.of(0.0, 0.0), Torus(JointAngles.of(math.pi, 1.0)))
    i, path = assert_plan_contract(atlas, q, 1e-12)
    assert i == 1
    # antipodal coordinates turn counterclockwise
    assert path(0.5)[0] == pytest.approx(math.pi / 2)


def test_circle_atlas_antipodal_query():
    atlas = circle_atlas()
    i, path = assert_plan_contract(atlas, Query(JointAngles.of(0.2), Circle(0.2 + math.pi)), 1e-12)
    assert i == 1
    i, _ = assert_plan_contract(atlas, Query(JointAngles.of(0.2), Circle(1.0)), 1e-12)
    assert i == 0


def test_single_revolute_atlas_plans_half_turns():
    atlas = single_revolute_atlas(2)
    q = Query(JointAngles.of(0.0), Circle(math.pi / 2))
    i, path = assert_plan_contract(atlas, q, 1e-12)
    assert i == 0
    assert path.end[0] == pytest.approx(math.pi / 4)


def test_interval_atlas_stays_in_the_arc():
    atlas = interval_revolute_atlas(2, 2.0)
    mech = atlas.mechanism
    for k in range(50):
        q = atlas.sample_query(sample_rng(0, k))
        _, path = assert_plan_contract(atlas, q)
        assert np.all(np.abs(wrap_pi(path.angles[:, 0])) <= mech.theta_max + 1e-9)
    i, _ = assert_plan_contract(atlas, Query(JointAngles.of(-1.5), Circle(math.pi)))
    assert i == 1


def test_interval_atlas_needs_surjective_arc():
    with pytest.raises(InvalidInput):
        interval_revolute_atlas(2, 1.0)
    with pytest.raises(InvalidInput):
        interval_revolute_atlas(1, 2.0)


def test_planar_arm_plan():
    atlas = planar_arm_atlas([2.0, 1.0])
    i, path = assert_plan_contract(atlas, Query(JointAngles.of(0.1, 0.2), Planar(2.0, 1.0)), 1e-9)
    assert i == 0
    # elbow-down preimage of (2, 1)
    assert torus_distance(path.end, JointAngles.of(0.0, math.pi / 2)) < 1e-12


def test_planar_arm_unreachable_target():
    atlas = planar_arm_atlas([2.0, 1.0])
    with pytest.raises(NoChart):
        atlas.plan(Query(JointAngles.of(0.0, 0.0), Planar(5.0, 0.0)))


def test_planar_arm_needs_long_first_link():
    with pytest.raises(Unsupported):
        planar_arm_atlas([1.0, 1.0, 1.0])


def test_planar_arm_random_queries():
    atlas = planar_arm_atlas([3.0, 1.0, 1.0])
    for k in range(50):
        assert_plan_contract(atlas, atlas.sample_query(sample_rng(1, k)))


def test_universal_pole_query():
    atlas = universal_atlas(1.0)
    i, path = assert_plan_contract(atlas, Query(JointAngles.of(0.3, -math.pi / 2), NORTH), 1e-12)
    assert atlas[i].label == 'pole/semicircle'
    assert tuple(path.end) == pytest.approx((0.3, math.pi / 2))


def test_universal_linear_pole_chart():
    atlas = universal_atlas(1.0)
    i, path = assert_plan_contract(atlas, Query(JointAngles.of(0.3, 0.2), SOUTH), 1e-12)
    assert atlas[i].label == 'pole/linear'
    assert path.end[1] == pytest.approx(1.5 * math.pi)


def test_universal_regular_query_ends_on_primary_branch():
    atlas = universal_atlas(1.0)
    i, path = assert_plan_contract(atlas, Query(JointAngles.of(0.3, 0.2), Sphere([1, 0, 0])))
    assert i < 3
    assert math.cos(path.end[1]) > 0.0
    # start on the far side of the pole
    i, path = assert_plan_contract(atlas, Query(JointAngles.of(2.0, 2.5), Sphere.from_vector([0.2, 0.5, -0.3])))
    assert i < 3
    assert math.cos(path.end[1]) > 0.0


def test_universal_random_queries():
    atlas = universal_atlas(2.0)
    for k in range(50):
        i, path = assert_plan_contract(atlas, atlas.sample_query(sample_rng(2, k)))
        assert math.cos(path.end[1]) > 0.0


def test_wrist_singular_query():
    atlas = wrist_atlas()
    q = Query(JointAngles.of(0.1, 0.2, 0.3), Rotation(rot_z(0.7)))
    i, path = assert_plan_contract(atlas, q, 1e-9)
    assert i == 4
    t1, t2, t3 = path.end
    assert min(t2, 2 * math.pi - t2) < 1e-9
    assert float(wrap_pi(t1 + t3 - 0.7)) == pytest.approx(0.0, abs=1e-9)


def test_wrist_second_singular_circle():
    atlas = wrist_atlas()
    q = Query(JointAngles.of(0.4, 2.0, 1.0), Rotation(rot_z(0.7) @ rot_x(math.pi)))
    i, path = assert_plan_contract(atlas, q, 1e-9)
    assert i >= 4
    assert path.end[1] == pytest.approx(math.pi, abs=1e-9)


def test_wrist_regular_query():
    atlas = wrist_atlas()
    q = Query(JointAngles.of(0.1, 4.0, 0.3), Rotation(rot_z(0.2) @ rot_x(0.9) @ rot_z(-0.4)))
    i, path = assert_plan_contract(atlas, q)
    assert i < 4
    assert math.sin(path.end[1]) > 0.0


def test_wrist_random_queries():
    atlas = wrist_atlas()
    for k in range(30):
        i, path = assert_plan_contract(atlas, atlas.sample_query(sample_rng(4, k)))
        assert i < 4


@pytest.mark.parametrize('chart', [4, 5, 6])
def test_wrist_singular_probes_land_in_their_chart(chart):
    atlas = wrist_atlas()
    for k in range(10):
        q = atlas[chart].probe(sample_rng(5, k))
        assert atlas.chart_index(q) == chart
        assert_plan_contract(atlas, q, 1e-9)


def test_default_atlas():
    assert len(default_atlas(SingleRevolute(3))) == 2
    assert len(default_atlas(SingleRevolute(2, theta_max=2.0))) == 2
    assert len(default_atlas(PlanarArm([2.0, 1.0]))) == 3
    assert len(default_atlas(UniversalJoint())) == 5
    assert len(default_atlas(TripleRollWrist())) == 7
    with pytest.raises(Unsupported):
        default_atlas(Serial6DOF())


def test_equal_links_plan_to_the_origin():
    atlas = planar_arm_atlas([1.0, 1.0])
    assert len(atlas) == 5
    ends = []
    for x in (1e-7, -1e-7, 0.0):
        i, path = assert_plan_contract(atlas, Query(JointAngles.of(0.4, 1.0), Planar(x, 0.0)))
        ends.append(path.end)
    # off-origin targets stay in the elbow-down chart, the origin itself gets its own
    assert atlas[plan(atlas, Query(JointAngles.of(0.4, 1.0), Planar(0.0, 0.0)))[0]].label == 'origin/linear'
    assert tuple(ends[2]) == pytest.approx((0.4, math.pi))
    folded = Query(JointAngles.of(0.4, 0.0), Planar(0.0, 0.0))
    i, path = assert_plan_contract(atlas, folded)
    assert atlas[i].label == 'origin/fold'
    assert tuple(path.end) == pytest.approx((0.4, math.pi))


def test_equal_links_regular_chart_excludes_the_origin():
    atlas = planar_arm_atlas([1.0, 1.0])
    c = JointAngles.of(0.4, 1.0)
    for x in (1e-7, -1e-7):
        i, _ = plan(atlas, Query(c, Planar(x, 0.0)))
        assert atlas[i].margin(Query(c, Planar(x, 0.0))) < 1e-6
    assert not any(chart.contains(Query(c, Planar(0.0, 0.0))) for chart in atlas.charts[:3])


def test_origin_linear_chart_is_continuous_in_the_start():
    atlas = planar_arm_atlas([1.0, 1.0])
    origin = Planar(0.0, 0.0)
    prev = None
    for k in range(1, 200):
        c = JointAngles.of(0.4, 2 * math.pi * k / 200)
        _, path = plan(atlas, Query(c, origin))
        if prev is not None:
            assert torus_distance(path.end, prev) < 1e-12
        prev = path.end


def test_universal_regular_plans_flip_back_to_the_primary_branch():
    atlas = universal_atlas(1.0)
    mech = atlas.mechanism
    q = Query(JointAngles.of(0.2, 0.1), mech.forward(JointAngles.of(1.0, 0.5)))
    i, path = assert_plan_contract(atlas, q, 1e-9)
    assert i < 3
    assert torus_distance(path.end, JointAngles.of(1.0, 0.5)) < 1e-9
    # the plan reaches I'(w) before sliding back
    assert np.min(np.cos(path.angles[:, 1])) < 0.0


def test_wrist_regular_plans_flip_back_to_the_primary_branch():
    atlas = wrist_atlas()
    mech = atlas.mechanism
    q = Query(JointAngles.of(0.2, 0.3, 0.1), mech.forward(JointAngles.of(1.0, 0.5, -0.4)))
    i, path = assert_plan_contract(atlas, q, 1e-9)
    assert i < 4
    assert torus_distance(path.end, JointAngles.of(1.0, 0.5, -0.4)) < 1e-9
    assert np.min(np.sin(path.angles[:, 1])) < 0.0
