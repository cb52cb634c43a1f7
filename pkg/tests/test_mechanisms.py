import math

import numpy as np
import pytest

from kinatlas.core import JointAngles, Planar, Circle, Sphere, Rotation, torus_distance, work_distance
from kinatlas.core.workspace import work_perturb
from kinatlas.core.rotations import rot_x, rot_z
from kinatlas.mechanisms import (Branch, SingleRevolute, TorusIdentity, PlanarArm, UniversalJoint, TripleRollWrist,
                                 Serial6DOF, NORTH, numerical_jacobian, forward, inverse, mechanism_from_json,
                                 load_mechanism, load_query)
from kinatlas.verify.sampling import uniform_config, uniform_work
from kinatlas.errors import (InvalidInput, DimensionError, VariantMismatch, Unreachable, BranchDomainError,
                             NoGlobalInverse, Unsupported)


def test_single_revolute_forward():
    mech = SingleRevolute(2)
    assert mech.forward(JointAngles.of(0.25 * math.pi)).theta == pytest.approx(0.5 * math.pi)
    with pytest.raises(NoGlobalInverse):
        mech.inverse(Circle(1.0))
    assert SingleRevolute(1).inverse(Circle(1.0))[0] == pytest.approx(1.0)
    with pytest.raises(InvalidInput):
        SingleRevolute(0)
    with pytest.raises(InvalidInput):
        SingleRevolute(2, theta_max=4.0)


def test_planar_forward():
    mech = PlanarArm([2.0, 1.0])
    w = mech.forward(JointAngles.of(0.0, math.pi / 2))
    assert (w.x, w.y) == pytest.approx((2.0, 1.0))
    with pytest.raises(DimensionError):
        mech.forward(JointAngles.of(0.0))


def test_planar_inverse_boundary_point():
    c = PlanarArm([2.0, 1.0]).inverse(Planar(3.0, 0.0))
    assert tuple(c) == pytest.approx((0.0, 0.0))


@pytest.mark.parametrize('branch', [Branch.PRIMARY, Branch.SECONDARY])
def test_planar_inverse_round_trip(branch):
    mech = PlanarArm([2.0, 1.0])
    c = inverse(mech, Planar(2.0, 1.0), branch)
    w = forward(mech, c)
    assert (w.x, w.y) == pytest.approx((2.0, 1.0), abs=1e-9)
    # law of cosines: (5 - 4 - 1) / 4 = 0
    expected = math.pi / 2 if branch == Branch.PRIMARY else 3 * math.pi / 2
    assert c[1] == pytest.approx(expected)


def test_planar_inverse_errors():
    with pytest.raises(Unreachable):
        PlanarArm([2.0, 1.0]).inverse(Planar(5.0, 0.0))
    with pytest.raises(Unsupported):
        PlanarArm([1.0, 1.0, 1.0]).inverse(Planar(1.0, 0.0))
    c = PlanarArm([3.0, 1.0, 1.0]).inverse(Planar(4.0, 0.5))
    assert c[2] == 0.0


def test_planar_critical_radii():
    assert PlanarArm([2.0, 1.0]).critical_radii() == pytest.approx([1.0, 3.0])
    assert PlanarArm([3.0, 1.0, 1.0]).critical_radii() == pytest.approx([1.0, 3.0, 5.0])


def test_planar_jacobian_stretched_arm():
    j = PlanarArm([2.0, 1.0]).jacobian(JointAngles.of(0.0, 0.0))
    assert np.allclose(j.matrix, [[0.0, 0.0], [3.0, 1.0]])


def test_universal_jacobian():
    mech = UniversalJoint(2.0)
    j = mech.jacobian(JointAngles.of(0.0, 0.0))
    assert np.allclose(j.matrix, 2.0 * np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    assert np.linalg.matrix_rank(mech.jacobian(JointAngles.of(0.0, math.pi / 2)).matrix, tol=1e-9) == 1


def test_universal_inverse():
    mech = UniversalJoint()
    assert tuple(mech.inverse(Sphere([1, 0, 0]))) == pytest.approx((0.0, 0.0))
    w = Sphere.from_vector([0.3, -0.4, 0.5])
    for branch in Branch:
        c = mech.inverse(w, branch)
        assert np.allclose(mech.forward(c).v, w.v, atol=1e-12)
    secondary = mech.inverse(w, Branch.SECONDARY)
    assert math.cos(secondary[1]) < 0.0
    with pytest.raises(BranchDomainError):
        mech.inverse(NORTH)


def test_wrist_forward_on_singular_circle():
    w = TripleRollWrist().forward(JointAngles.of(0.7, 0.0, 0.0))
    assert np.allclose(w.matrix, rot_z(0.7))


@pytest.mark.parametrize('branch', [Branch.PRIMARY, Branch.SECONDARY])
def test_wrist_inverse_round_trip(branch):
    mech = TripleRollWrist()
    w = Rotation(rot_x(math.pi / 2))
    c = mech.inverse(w, branch)
    assert np.allclose(mech.forward(c).matrix, w.matrix, atol=1e-9)
    assert (math.sin(c[1]) > 0.0) == (branch == Branch.PRIMARY)
    with pytest.raises(BranchDomainError):
        mech.inverse(Rotation(rot_z(0.3)), branch)


@pytest.mark.parametrize('mech, c', [
    (PlanarArm([2.0, 1.0, 0.5]), (0.3, -1.1, 2.0)),
    (UniversalJoint(1.5), (0.4, 0.9)),
    (TripleRollWrist(), (0.2, 1.1, -0.7)),
])
def test_analytic_jacobians_match_finite_differences(mech, c):
    c = JointAngles(c)
    assert np.allclose(mech.jacobian(c).matrix, numerical_jacobian(mech, c).matrix, atol=1e-6)


def test_serial_6dof():
    mech = Serial6DOF()
    w = mech.forward(JointAngles.of(*[0.0] * 6))
    assert w.kind == 'pose'
    assert mech.jacobian(JointAngles.of(0.1, 0.2, 0.3, 0.4, 0.5, 0.6)).shape == (6, 6)
    with pytest.raises(Unsupported):
        mech.inverse(w)
    with pytest.raises(InvalidInput):
        Serial6DOF([[0.0, 0.0, 0.0, 0.0]])


def test_torus_identity():
    mech = TorusIdentity(3)
    c = JointAngles.of(0.1, 0.2, 0.3)
    assert mech.forward(c).angles == c
    assert np.allclose(mech.jacobian(c).matrix, np.eye(3))


def test_inverse_checks_target_kind():
    with pytest.raises(VariantMismatch):
        inverse(PlanarArm([2.0, 1.0]), Circle(0.0))


def test_mechanism_from_json():
    assert isinstance(mechanism_from_json({'kind': 'planar_arm', 'lengths': [2, 1]}), PlanarArm)
    assert mechanism_from_json({'kind': 'single_revolute', 'ratio': 3}).ratio == 3
    assert mechanism_from_json({'kind': 'torus', 'n': 4}).config_dim == 4
    with pytest.raises(InvalidInput):
        mechanism_from_json({'kind': 'delta_robot'})
    with pytest.raises(InvalidInput):
        mechanism_from_json({'kind': 'planar_arm'})
    with pytest.raises(InvalidInput):
        mechanism_from_json({'kind': 'planar_arm', 'lengths': [2, -1]})


def test_load_files(tmp_path):
    mf = tmp_path / 'arm.json'
    mf.write_text('{"kind": "planar_arm", "lengths": [2, 1]}')
    qf = tmp_path / 'query.json'
    qf.write_text('{"config": [0.1, 0.2], "target": {"kind": "planar", "x": 2, "y": 1}}')
    mech = load_mechanism(str(mf))
    assert load_query(str(qf), mech).target.x == 2.0
    qf.write_text('{"config": [0.1, 0.2, 0.3], "target": {"kind": "planar", "x": 2, "y": 1}}')
    with pytest.raises(InvalidInput):
        load_query(str(qf), mech)
    mf.write_text('{"kind": ')
    with pytest.raises(InvalidInput):
        load_mechanism(str(mf))


INVERTIBLE = [SingleRevolute(1), TorusIdentity(3), PlanarArm([2.0, 1.0]), PlanarArm([1.0, 2.0]),
              PlanarArm([3.0, 1.0, 1.0]), UniversalJoint(1.5), TripleRollWrist()]


def regular_margin(mech, w):
    """How far w lies from the critical values of mech."""
    if isinstance(mech, PlanarArm):
        return min(abs(w.radius - r) for r in mech.reach)
    if isinstance(mech, UniversalJoint):
        return UniversalJoint.pole_distance(w)
    if isinstance(mech, TripleRollWrist):
        return TripleRollWrist.tilt(w)
    return math.inf


def regular_values(mech, rng, count, margin):
    n = 0
    while n < count:
        w = uniform_work(mech, rng)
        if regular_margin(mech, w) > margin:
            n += 1
            yield w


@pytest.mark.parametrize('branch', list(Branch))
@pytest.mark.parametrize('mech', INVERTIBLE, ids=lambda m: m.kind)
def test_forward_inverts_the_inverse_on_random_regular_values(mech, branch):
    for w in regular_values(mech, np.random.default_rng(11), 5000, 1e-6):
        assert work_distance(mech.forward(mech.inverse(w, branch)), w) < 1e-9


@pytest.mark.parametrize('mech', [SingleRevolute(3), TorusIdentity(2), PlanarArm([2.0, 1.0, 0.5]),
                                  UniversalJoint(1.5), TripleRollWrist()], ids=lambda m: m.kind)
def test_analytic_jacobians_match_finite_differences_everywhere(mech):
    rng = np.random.default_rng(12)
    for _ in range(1000):
        c = uniform_config(mech.config_dim, rng)
        assert np.allclose(mech.jacobian(c).matrix, numerical_jacobian(mech, c).matrix, atol=1e-6)


@pytest.mark.parametrize('branch', list(Branch))
@pytest.mark.parametrize('mech', INVERTIBLE, ids=lambda m: m.kind)
def test_inverse_branch_is_continuous(mech, branch):
    rng = np.random.default_rng(13)
    for w in regular_values(mech, rng, 1000, 0.05):
        nearby = work_perturb(w, 1e-7, rng)
        assert torus_distance(mech.inverse(w, branch), mech.inverse(nearby, branch)) < 1e-4
