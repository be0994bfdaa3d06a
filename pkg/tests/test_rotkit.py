import math

import numpy as np
import pytest

from falak import rotkit, shatir
from falak.errors import PreconditionViolated, UnknownPointLabel
from falak.rotkit import I, J, K, angle, apply_chain, rot
from falak.sexagesimal import sx


def test_zero_angles_leave_points_alone():
    steps = [rot((1, 2, 3), 0.0), rot((0, 5, 0), 0.0, I), rot("A", angle(x=1), J)]
    p = np.array([4.0, -1.0, 2.5])
    assert np.allclose(apply_chain(steps, {"x": 0.0}, p, {"A": (7, 7, 7)}), p, atol=0)


def test_rightmost_step_acts_first():
    # Quarter turn about the origin, then a half turn about (0, 1, 0).
    steps = [rot((0, 1, 0), 180.0), rot((0, 0, 0), 90.0)]
    out = apply_chain(steps, {}, (0, 1, 0))
    # (0,1,0) -> (-1,0,0) -> mirror through (0,1,0) -> (1,2,0)
    assert np.allclose(out, (1, 2, 0), atol=1e-12)


def test_positive_angle_turns_j_toward_minus_i():
    out = apply_chain([rot((0, 0, 0), 90.0)], {}, J)
    assert np.allclose(out, -I, atol=1e-15)


def test_unknown_label():
    with pytest.raises(UnknownPointLabel):
        apply_chain([rot("Q", 10.0)], {}, (0, 0, 0), {"P": (0, 0, 0)})


def test_zero_axis_rejected():
    with pytest.raises(PreconditionViolated):
        rot((0, 0, 0), 1.0, (0, 0, 0))


def test_axis_is_normalized():
    step = rot((0, 0, 0), 1.0, (0, 3, 4))
    assert math.isclose(float(np.linalg.norm(step.axis)), 1.0, abs_tol=1e-12)


def _sun_point(anomaly):
    cfg = shatir.build_config("sun")
    params = {"apogee": 0.0, "anomaly": anomaly, "mean_sun": anomaly}
    return apply_chain(cfg.chain, params, "P", cfg.figure)


def test_sun_chain_at_apogee():
    assert np.allclose(_sun_point(0.0), (0, sx("67;7"), 0), atol=1e-12)


def test_sun_chain_at_perigee():
    # Perigee lies opposite the apogee, so at distance 52;53 along -j.
    assert np.allclose(_sun_point(180.0), (0, -sx("52;53"), 0), atol=1e-12)


def test_prop1_at_zero_and_apollonius_offsets():
    p2 = np.array([0.0, sx("2;30"), 0.0])
    p1, p3 = np.zeros(3), 2 * p2
    p4 = p3 + p2
    assert rotkit.check_prop1(p1, p2, p3, p4, 0.0) == 0.0
    assert rotkit.check_prop1(p1, p2, p3, p4, 37.0) < 1e-9


def test_prop1_precondition():
    with pytest.raises(PreconditionViolated):
        rotkit.check_prop1((0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 4, 0), 10.0)


def test_prop2_prop3_preconditions():
    with pytest.raises(PreconditionViolated):
        rotkit.check_prop2((0, 0, 0), (0, 1, 0), (0, 5, 0), (0, 4, 0), (0, 7, 0), 10.0)
    with pytest.raises(PreconditionViolated):
        rotkit.check_prop3((0, 0, 0), (0, 1, 0), (0, 1, 0), 10.0)


def test_prop2_and_prop3_at_zero():
    pts = [(0, 0, 0), (0, 1, 0), (0, 5, 0), (0, 4, 0), (0, 6, 0)]
    assert rotkit.check_prop2(*pts, 0.0) == 0.0
    assert rotkit.check_prop3((0, 2, 0), (0, 3, 0), (0, 1, 0), 0.0) == 0.0


def test_couple_slides_along_its_base():
    # P3 = 0, P4 = -b, P5 = +b: composing by hand gives P3 -> 2 b (1 - cos a).
    b = sx("0;33")
    center = 50.0
    a = 2 * center
    p3 = np.array([0.0, 10.0, 0.0])
    p4, p5 = p3 - b * J, p3 + b * J
    p1, p2 = np.zeros(3), b * J
    t = rotkit.couple_transform(p3, p4, p5, a)
    shift = t(p3) - p3
    assert np.allclose(shift, 2 * b * (1 - math.cos(math.radians(a))) * J, atol=1e-12)
    assert rotkit.couple_translation_residual(p1, p2, p3, p4, p5, a) < 1e-9


def test_commute_with_zero_front_returns_tilt():
    tilt = rot((1, 2, 0), 5.0, J)
    t = rotkit.commute(rot((0, 0, 0), 0.0), tilt, {})
    assert np.allclose(t.axis, tilt.axis) and np.allclose(t.center, (1, 2, 0))
    assert t.angle == tilt.angle


def test_commute_moon_node_axis():
    node = 37.0
    front = rot("P1", angle(node=-1))
    tilt = rot("P2", 5.0, J)
    figure = {"P1": np.zeros(3), "P2": np.zeros(3)}
    t = rotkit.commute(front, tilt, {"node": node}, figure)
    expected = rotkit.rotation_matrix(K, -node) @ J
    assert np.allclose(t.axis, expected, atol=1e-15)


def test_commute_residual_on_probes():
    rng = np.random.default_rng(3)
    front = rot(tuple(rng.normal(size=3)), 71.0)
    tilt = rot(tuple(rng.normal(size=3)), -12.0, tuple(rng.normal(size=3)))
    t = rotkit.commute(front, tilt, {})
    lhs = rotkit.chain_transform([front, tilt], {})
    rhs = rotkit.chain_transform([t, front], {})
    probes = [rng.normal(scale=50, size=3) for _ in range(20)]
    assert rotkit.max_discrepancy(lhs, rhs, probes) < 1e-9


def test_chain_is_isometry():
    cfg = shatir.build_config("mercury")
    tr = rotkit.chain_transform(cfg.chain, cfg.parameters(1234.5), cfg.figure)
    assert rotkit.isometry_defect(tr, list(cfg.figure.values())) < 1e-9
