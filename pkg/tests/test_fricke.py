"""Fricke Eisenstein series, arc machinery, restricted functions, and
fundamental-domain reduction."""

import cmath
import math
from fractions import Fraction
from math import pi

import numpy as np
import pytest

from fricke_zeros.eisenstein import LatticeSumConfig
from fricke_zeros.fricke import (
    THETA_MAX,
    admissible_representatives,
    arc_point,
    arc_spec,
    elliptic_points,
    f_restricted,
    f_restricted_transform_path,
    fricke_eisenstein,
    fricke_qseries,
    in_fundamental_domain,
    m_count,
    reduce_to_fundamental_domain,
)
from fricke_zeros.qseries import divisor_sum


def test_arc_spec():
    spec2 = arc_spec(2)
    assert spec2.radius == pytest.approx(1 / math.sqrt(2))
    assert spec2.theta_min == pytest.approx(pi / 2)
    assert spec2.theta_max == pytest.approx(3 * pi / 4)
    assert arc_spec(3).theta_max == pytest.approx(5 * pi / 6)


@pytest.mark.parametrize("k,p,expected", [
    (8, 2, 1),    # floor(8/8 - 0)
    (10, 2, 0),   # floor(10/8 - 2/4)
    (14, 3, 1),   # floor(14/6 - 2/4)
    (12, 3, 2),
    (200, 2, 25),
    (200, 3, 33),
    (12, 1, 1),
])
def test_m_count(k, p, expected):
    assert m_count(k, p) == expected


def test_fricke_qseries_constant_and_first_terms():
    s = fricke_qseries(4, 2, 4)
    assert s.coeffs[0] == 1
    # a_1 = 240 / (2^2 + 1)
    assert s.coeffs[1] == Fraction(240, 5)
    s3 = fricke_qseries(4, 3, 4)
    assert s3.coeffs[3] == Fraction(240 * divisor_sum(3, 3) + 9 * 240, 10)


def test_fricke_eisenstein_two_paths_agree():
    z = 0.1 + 0.9j
    a = fricke_eisenstein(8, 2, z, path="series")
    b = fricke_eisenstein(8, 2, z, LatticeSumConfig(40_000), path="lattice")
    assert abs(a - b) < 1e-8
    with pytest.raises(ValueError):
        fricke_eisenstein(8, 2, z, path="bogus")
    with pytest.raises(ValueError):
        fricke_eisenstein(8, 1, z)


def test_admissible_representatives_filters():
    c2, d2, n2 = admissible_representatives(2, 200)
    assert np.all(c2 % 2 == 1)
    c3, d3, n3 = admissible_representatives(3, 200)
    assert np.all(c3 % 3 != 0)
    c1, d1, n1 = admissible_representatives(1, 200)
    assert (int(c1[0]), int(d1[0])) == (0, 1)
    assert all(math.gcd(int(c), abs(int(d))) == 1 for c, d in zip(c3, d3))
    assert np.all(np.diff(n2) >= 0)


def test_f_restricted_matches_transform_path():
    # the pair-sum rearrangement against the direct modular-form route
    cfg = LatticeSumConfig(40_000)
    for k, p, theta in [(8, 2, 2.0), (12, 3, 2.2), (12, 1, 1.8)]:
        direct = f_restricted(k, p, theta, cfg)
        via_form = f_restricted_transform_path(k, p, theta)
        assert abs(via_form.imag) < 1e-8
        assert abs(direct - via_form.real) < 1e-6


def test_f_restricted_is_2cos_plus_small_tail():
    # at large weight the leading terms dominate: F* ~ 2 cos(k theta / 2)
    for p in (2, 3):
        theta = 0.6 * pi
        val = f_restricted(40, p, theta)
        assert abs(val - 2 * math.cos(20 * theta)) < 0.1


def test_elliptic_points_on_arc():
    zi, zrho = elliptic_points(3)
    assert abs(zi - 1j / math.sqrt(3)) < 1e-15
    assert abs(abs(zrho) - 1 / math.sqrt(3)) < 1e-15
    assert cmath.phase(zrho) == pytest.approx(THETA_MAX[3])


def test_in_fundamental_domain():
    assert in_fundamental_domain(1j, 2)
    assert in_fundamental_domain(arc_point(2, 3 * pi / 4), 2)   # left corner kept
    assert not in_fundamental_domain(arc_point(2, pi / 4), 2)   # right corner dropped
    assert not in_fundamental_domain(0.3 + 0.4j, 3)             # |z| = 0.5 < 1/sqrt(3)
    assert not in_fundamental_domain(0.7 + 2j, 1)


def test_reduce_identity_and_translation():
    z = -0.2 + 1.1j
    w, word = reduce_to_fundamental_domain(z, 2)
    assert w == z and len(word) == 0
    w, word = reduce_to_fundamental_domain(z + 1, 2)
    assert abs(w - z) < 1e-12
    assert abs(word.apply(w, 2) - (z + 1)) < 1e-12


def test_reduce_inverts_fricke_involution():
    z = -0.2 + 1.1j  # interior point of F*(2)
    moved = -1 / (2 * z)
    w, word = reduce_to_fundamental_domain(moved, 2)
    assert abs(w - z) < 1e-9
    assert abs(word.apply(w, 2) - moved) < 1e-9


@pytest.mark.parametrize("p", [1, 2, 3])
def test_reduce_random_points_land_inside(p):
    rng = np.random.default_rng(7)
    for _ in range(25):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
        w, word = reduce_to_fundamental_domain(z, p)
        assert in_fundamental_domain(w, p), (z, w)
        assert abs(word.apply(w, p) - z) < 1e-6 * max(1, abs(z))
