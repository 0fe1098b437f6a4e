"""Zero location on the arc, winding-number orders, and valence audits."""

import cmath
import math
from fractions import Fraction
from math import pi

import pytest

from fricke_zeros.eisenstein import LatticeSumConfig
from fricke_zeros.fricke import arc_point, elliptic_points, m_count
from fricke_zeros.zeros import (
    expected_elliptic_orders,
    locate_zeros,
    order_at_point,
    sample_points,
    stable_winding,
    valence_audit,
    winding_number,
)


def test_sample_points_8_2():
    # integer points 2 m pi / 8 inside [pi/2, 3pi/4]: m = 2, 3
    pts = sample_points(8, 2)
    assert pts == pytest.approx([pi / 2, 3 * pi / 4])


def test_sample_points_12_2():
    # m = 3, 4 giving {pi/2, 2pi/3}; the single interior sign change is m2(12)
    pts = sample_points(12, 2)
    assert pts == pytest.approx([pi / 2, 2 * pi / 3])


def test_sample_points_land_in_closed_interval():
    for k in (4, 10, 34, 100):
        for p in (1, 2, 3):
            for t in sample_points(k, p):
                assert pi / 2 - 1e-12 <= t
            assert len(sample_points(k, p)) >= 1


def test_locate_zeros_8_2():
    records = locate_zeros(8, 2)
    assert len(records) == 1 == m_count(8, 2)
    (rec,) = records
    assert rec.bracket[1] - rec.bracket[0] <= 1e-10
    assert rec.f_lo * rec.f_hi < 0
    assert pi / 2 < rec.theta < 3 * pi / 4
    assert abs(rec.point - arc_point(2, rec.theta)) < 1e-15


def test_zero_positions_stable_under_truncation_doubling():
    base = locate_zeros(12, 3, cfg=LatticeSumConfig(20_000))
    fine = locate_zeros(12, 3, cfg=LatticeSumConfig(40_000))
    for a, b in zip(base, fine):
        assert abs(a.theta - b.theta) < 1e-9


def test_locate_zeros_rejects_tiny_tolerance():
    with pytest.raises(ValueError):
        locate_zeros(8, 2, tol=1e-14)


def test_winding_number_polynomial():
    # z^3 winds 3 times around 0; no zeros away from 0
    assert winding_number(lambda z: z**3, 0, 0.5) == 3
    assert winding_number(lambda z: z**3, 2.0, 0.5) == 0
    assert stable_winding(lambda z: (z - 1j) ** 2, 1j, 0.1) == 2


@pytest.mark.parametrize("k,p,expected", [
    (16, 2, (0, 0)),   # k = 0 mod 8: both congruence solutions are 0
    (4, 2, (0, 2)),
    (6, 2, (1, 1)),
    (10, 2, (1, 3)),
    (4, 3, (0, 4)),
    (6, 3, (1, 3)),
    (14, 3, (1, 5)),
    (22, 3, (1, 1)),
    (4, 1, (0, 1)),
    (6, 1, (1, 0)),
    (8, 1, (0, 2)),
])
def test_expected_elliptic_orders(k, p, expected):
    assert expected_elliptic_orders(k, p) == expected


def test_order_at_point_measures_elliptic_orders():
    zi, zrho = elliptic_points(2)
    assert order_at_point(4, 2, zrho) == 2
    assert order_at_point(6, 2, zi) == 1
    # a non-elliptic, non-arc interior point carries no zero
    assert order_at_point(6, 2, -0.25 + 1.5j) == 0


def test_order_at_point_rejects_low_circle():
    with pytest.raises(ValueError):
        order_at_point(8, 2, 0.01j)


@pytest.mark.parametrize("k,p", [(4, 1), (14, 1), (8, 2), (10, 2), (12, 3), (10, 3)])
def test_valence_audit_exact(k, p):
    report = valence_audit(k, p)
    assert report.passed
    assert report.lhs == report.rhs == Fraction(k, {1: 12, 2: 8, 3: 6}[p])
    assert report.sub_checks["orders_match_congruence"]


def test_valence_4_1_is_rho_only():
    # the classical weight-4 form vanishes only at rho, to order 1: 1/3
    report = valence_audit(4, 1)
    assert (report.v_infinity, report.v_i, report.v_rho) == (0, 0, 1)
    assert report.interior_zeros == ()
    assert report.lhs == Fraction(1, 3)


def test_valence_10_3_split():
    # 1/2 + 1/6 + one interior simple zero = 10/6
    report = valence_audit(10, 3)
    assert (report.v_i, report.v_rho) == (1, 1)
    assert len(report.interior_zeros) == 1
    assert report.lhs == Fraction(10, 6)
    assert report.sub_checks["forced_vanishing_at_i"]


def test_to_dict_roundtrip_fields():
    report = valence_audit(8, 2)
    d = report.to_dict()
    assert d["lhs"] == d["rhs"] == "1/1"
    assert d["passed"] is True
    z = d["interior_zeros"][0]
    assert set(z) == {"theta", "point", "bracket", "f_lo", "f_hi", "multiplicity"}
