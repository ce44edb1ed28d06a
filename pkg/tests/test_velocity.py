import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import EX, EZ, random_tree_model
from rkin.errors import DomainError, InputError
from rkin.fk import forward_kinematics
from rkin.model import LinkRecord, build_model, joint_states
from rkin.rotation import cross, exp_so3, hat, rot_z
from rkin.velocity import (end_point_velocity, finite_difference_check,
                           joint_world_angular_velocity, single_link_velocity)


def _z_joint_model():
    return build_model([
        LinkRecord(self_id=0, name="base", parent_id=None, joint_axis=EZ, offset=np.zeros(3)),
        LinkRecord(self_id=1, name="spinner", parent_id=0, joint_axis=EZ, offset=np.zeros(3)),
    ])


def _x_joint_model(offset):
    return build_model([
        LinkRecord(self_id=0, name="base", parent_id=None, joint_axis=EX, offset=np.zeros(3)),
        LinkRecord(self_id=1, name="arm", parent_id=0, joint_axis=EX,
                   offset=np.asarray(offset, dtype=float)),
    ])


# --- per-joint world angular velocity ---

def test_zero_rate_contributes_nothing(two_link_model):
    states = joint_states({1: 0.3, 2: 0.7})
    poses = forward_kinematics(two_link_model, states)
    assert np.array_equal(joint_world_angular_velocity(two_link_model, poses, 1, 0.0),
                          np.zeros(3))


def test_root_attached_z_joint():
    model = _z_joint_model()
    poses = forward_kinematics(model, joint_states({1: 0.0}))
    assert np.array_equal(joint_world_angular_velocity(model, poses, 1, 1.0),
                          [0.0, 0.0, 1.0])


def test_rotated_parent_rotates_the_axis():
    from rkin.transform import make_transform
    base = make_transform(rot_z(math.pi / 2), [0.0, 0.0, 0.0])
    model = build_model([
        LinkRecord(self_id=0, name="base", parent_id=None, joint_axis=EX, offset=np.zeros(3)),
        LinkRecord(self_id=1, name="arm", parent_id=0, joint_axis=EX, offset=np.zeros(3)),
    ], base_transform=base)
    poses = forward_kinematics(model, joint_states({1: 0.0}))
    assert_allclose(joint_world_angular_velocity(model, poses, 1, 1.0),
                    [0.0, 1.0, 0.0], atol=1e-15)


def test_root_has_no_joint_contribution(two_link_model):
    states = joint_states({1: 0.1, 2: 0.2})
    poses = forward_kinematics(two_link_model, states)
    assert np.array_equal(joint_world_angular_velocity(two_link_model, poses, 0, 5.0),
                          np.zeros(3))


# --- end-point velocity ---

def test_all_rates_zero_gives_zero_velocity(three_link_model):
    states = joint_states({1: 0.5, 2: -0.4, 3: 1.1})
    poses = forward_kinematics(three_link_model, states)
    vel = end_point_velocity(three_link_model, poses, states, 3, (0, 0, 1))
    assert np.array_equal(vel.linear, np.zeros(3))
    assert np.array_equal(vel.angular, np.zeros(3))


def test_single_z_joint_spins_a_radius():
    model = _z_joint_model()
    states = joint_states({1: 0.0}, dq={1: 1.0})
    poses = forward_kinematics(model, states)
    vel = end_point_velocity(model, poses, states, 1, (1.0, 0.0, 0.0))
    assert_allclose(vel.linear, [0.0, 1.0, 0.0], atol=1e-15)
    assert_allclose(vel.angular, [0.0, 0.0, 1.0], atol=1e-15)


def test_two_link_velocity_matches_stepwise_expansion(two_link_model):
    # independent oracle: the pre-simplification sum of derivative terms,
    # v = w_a x (R_a p_ab) + w_a x (R_a R_b p_be) + R_a (w_b^[a] x (R_b p_be))
    rng = np.random.default_rng(61)
    p_ab = np.array([0.0, 0.0, 1.0])
    p_be = np.array([0.0, 0.0, 1.0])
    for _ in range(50):
        qa, qb = rng.uniform(-math.pi, math.pi, size=2)
        dqa, dqb = rng.uniform(-1.0, 1.0, size=2)
        r_a = exp_so3(EX, qa)
        r_b = exp_so3(EX, qb)
        w_a = dqa * EX
        w_b_local = dqb * EX
        oracle_v = (cross(w_a, r_a @ p_ab)
                    + cross(w_a, r_a @ r_b @ p_be)
                    + r_a @ cross(w_b_local, r_b @ p_be))
        oracle_w = w_a + r_a @ w_b_local

        states = joint_states({1: qa, 2: qb}, dq={1: dqa, 2: dqb})
        poses = forward_kinematics(two_link_model, states)
        vel = end_point_velocity(two_link_model, poses, states, 2, p_be)
        assert np.abs(vel.linear - oracle_v).max() < 1e-12
        assert np.abs(vel.angular - oracle_w).max() < 1e-12


def test_velocity_is_additive_in_rates(three_link_model):
    rng = np.random.default_rng(62)
    q = {i: rng.uniform(-math.pi, math.pi) for i in (1, 2, 3)}
    dq1 = {i: rng.uniform(-1, 1) for i in (1, 2, 3)}
    dq2 = {i: rng.uniform(-1, 1) for i in (1, 2, 3)}
    dq_sum = {i: dq1[i] + dq2[i] for i in (1, 2, 3)}
    point = (0.3, -0.2, 1.0)

    def vel(dq):
        states = joint_states(q, dq)
        poses = forward_kinematics(three_link_model, states)
        return end_point_velocity(three_link_model, poses, states, 3, point)

    v1, v2, vs = vel(dq1), vel(dq2), vel(dq_sum)
    assert np.abs(vs.linear - (v1.linear + v2.linear)).max() < 1e-12
    assert np.abs(vs.angular - (v1.angular + v2.angular)).max() < 1e-12


def test_angular_velocity_sums_along_the_chain(two_link_model):
    rng = np.random.default_rng(63)
    for _ in range(20):
        q = {1: rng.uniform(-math.pi, math.pi), 2: rng.uniform(-math.pi, math.pi)}
        dq = {1: rng.uniform(-1, 1), 2: rng.uniform(-1, 1)}
        states = joint_states(q, dq)
        poses = forward_kinematics(two_link_model, states)
        w_a = joint_world_angular_velocity(two_link_model, poses, 1, dq[1])
        w_b = joint_world_angular_velocity(two_link_model, poses, 2, dq[2])
        vel = end_point_velocity(two_link_model, poses, states, 2, (0, 0, 1))
        assert np.abs(vel.angular - (w_a + w_b)).max() < 1e-12


def test_missing_rate_state_is_an_error(two_link_model):
    states = joint_states({1: 0.0, 2: 0.0})
    poses = forward_kinematics(two_link_model, states)
    del states[2]
    with pytest.raises(InputError, match=r"\b2\b"):
        end_point_velocity(two_link_model, poses, states, 2, (0, 0, 1))


def test_points_on_one_link_have_perpendicular_relative_velocity():
    rng = np.random.default_rng(64)
    model = random_tree_model(rng, 4)
    leaf = model.traverse()[-1]
    for _ in range(20):
        states = joint_states({i: rng.uniform(-math.pi, math.pi) for i in model.ids()
                               if i != model.root_id},
                              {i: rng.uniform(-1, 1) for i in model.ids()
                               if i != model.root_id})
        poses = forward_kinematics(model, states)
        x, y = rng.uniform(-1, 1, size=3), rng.uniform(-1, 1, size=3)
        vx = end_point_velocity(model, poses, states, leaf, x)
        vy = end_point_velocity(model, poses, states, leaf, y)
        px = poses[leaf].rotation @ x + poses[leaf].translation
        py = poses[leaf].rotation @ y + poses[leaf].translation
        assert abs(np.dot(vx.linear - vy.linear, px - py)) < 1e-9


# --- single-link specialization ---

def test_single_link_zero_rate(two_link_model):
    states = joint_states({1: 0.2, 2: 0.4})
    poses = forward_kinematics(two_link_model, states)
    vel = single_link_velocity(two_link_model, poses, 1, 0.0, (0, 0, 1))
    assert np.array_equal(vel.linear, np.zeros(3))
    assert np.array_equal(vel.angular, np.zeros(3))


def test_single_link_cross_product_value():
    # joint at (0,0,1) about x, unit rate; target one unit further out
    model = _x_joint_model([0.0, 0.0, 1.0])
    states = joint_states({1: 0.0}, dq={1: 1.0})
    poses = forward_kinematics(model, states)
    vel = single_link_velocity(model, poses, 1, 1.0, (0.0, 0.0, 1.0))
    assert_allclose(vel.linear, [0.0, -1.0, 0.0], atol=1e-15)
    assert_allclose(vel.angular, [1.0, 0.0, 0.0], atol=1e-15)


def test_single_link_equals_general_form():
    rng = np.random.default_rng(65)
    model = _x_joint_model([0.2, -0.4, 0.9])
    for _ in range(20):
        q = rng.uniform(-math.pi, math.pi)
        dq = rng.uniform(-1, 1)
        point = rng.uniform(-1, 1, size=3)
        states = joint_states({1: q}, dq={1: dq})
        poses = forward_kinematics(model, states)
        special = single_link_velocity(model, poses, 1, dq, point)
        general = end_point_velocity(model, poses, states, 1, point)
        assert np.abs(special.linear - general.linear).max() <= 1e-15
        assert np.abs(special.angular - general.angular).max() <= 1e-15


# --- finite-difference self-check ---

def test_fd_residual_zero_for_zero_rates(three_link_model):
    residual = finite_difference_check(three_link_model,
                                       {1: 0.3, 2: -0.2, 3: 0.8},
                                       {1: 0.0, 2: 0.0, 3: 0.0}, 3, (0, 0, 1))
    assert residual <= 1e-15


def test_fd_residual_single_joint():
    model = _x_joint_model([0.0, 0.0, 1.0])
    residual = finite_difference_check(model, {1: 0.4}, {1: 1.0}, 1,
                                       (0.0, 0.0, 1.0), h=1e-5)
    assert residual < 1e-9


def test_fd_residual_three_link_random(three_link_model):
    rng = np.random.default_rng(66)
    for _ in range(50):
        q = {i: rng.uniform(-math.pi, math.pi) for i in (1, 2, 3)}
        dq = {i: rng.uniform(-1, 1) for i in (1, 2, 3)}
        residual = finite_difference_check(three_link_model, q, dq, 3,
                                           (0, 0, 1), h=1e-5)
        assert residual < 1e-6


def test_fd_rejects_non_positive_step(three_link_model):
    with pytest.raises(DomainError):
        finite_difference_check(three_link_model, {1: 0, 2: 0, 3: 0},
                                {1: 0, 2: 0, 3: 0}, 3, (0, 0, 1), h=0.0)


def test_fd_residual_scales_quadratically():
    model = _x_joint_model([0.0, 0.0, 1.0])
    r_coarse = finite_difference_check(model, {1: 0.7}, {1: 1.0}, 1,
                                       (0.0, 0.0, 2.0), h=1e-3)
    r_fine = finite_difference_check(model, {1: 0.7}, {1: 1.0}, 1,
                                     (0.0, 0.0, 2.0), h=1e-4)
    assert r_fine < r_coarse / 50.0
