"""Lattice-sum oracle, fundamental-domain reduction, and the fast series path."""

import cmath
import math

import numpy as np
import pytest

from fricke_zeros.eisenstein import (
    DEFAULT_CONFIG,
    LatticeSumConfig,
    coprime_representatives,
    eisenstein_lattice_sum,
    eisenstein_series_value,
    sl2_reduce,
)
from fricke_zeros.qseries import eisenstein_qseries, evaluate_qseries


def test_unit_norm_pairs_only():
    # with only the unit-norm pairs admitted the halved sum is 1 + z^{-k}
    c, d = coprime_representatives(1)
    pairs = set(zip(c.tolist(), d.tolist()))
    assert pairs == {(0, 1), (1, 0)}
    z = 0.2 + 1.3j
    val = sum((ci * z + di) ** (-8) for ci, di in pairs)
    assert abs(val - (1 + z**-8)) < 1e-15


def test_representatives_coprime_and_sorted():
    c, d = coprime_representatives(100)
    norms = c * c + d * d
    assert np.all(np.diff(norms) >= 0)
    assert all(math.gcd(int(ci), abs(int(di))) == 1 for ci, di in zip(c, d))
    assert np.all((c > 0) | ((c == 0) & (d == 1)))


def test_lattice_sum_real_at_i():
    val = eisenstein_lattice_sum(4, 1j, LatticeSumConfig(10_000))
    assert abs(val.imag) < 1e-10


def test_lattice_vs_series_at_i():
    # two independent paths to E_8(i)
    lattice = eisenstein_lattice_sum(8, 1j, LatticeSumConfig(40_000))
    series = evaluate_qseries(eisenstein_qseries(8, 40), 1j).value
    assert abs(lattice - series) < 1e-8


def test_sl2_reduce_fixed_point():
    w, jfac = sl2_reduce(0.25 + 2.0j)
    assert w == 0.25 + 2.0j
    assert jfac == 1.0


def test_sl2_reduce_translation_and_inversion():
    z = 0.25 + 2.0j
    w, jfac = sl2_reduce(z + 3)
    assert abs(w - z) < 1e-12
    z_low = 0.1 + 0.2j  # |z| < 1 forces an inversion
    w, jfac = sl2_reduce(z_low)
    assert abs(w) >= 1 - 1e-9
    assert abs(w.real) <= 0.5 + 1e-9
    # automorphy consistency: E_8(z) = jfac^-8 E_8(w) against the oracle
    lhs = eisenstein_lattice_sum(8, z_low, LatticeSumConfig(40_000))
    rhs = jfac ** (-8) * eisenstein_lattice_sum(8, w, LatticeSumConfig(40_000))
    assert abs(lhs - rhs) / abs(rhs) < 1e-6


def test_series_value_matches_oracle():
    for z in (1j, 0.3 + 0.8j, -0.4 + 1.7j):
        fast = eisenstein_series_value(8, z)
        slow = eisenstein_lattice_sum(8, z, LatticeSumConfig(40_000))
        assert abs(fast - slow) < 1e-8


def test_weight_validation():
    with pytest.raises(ValueError):
        eisenstein_lattice_sum(7, 1j)
    with pytest.raises(ValueError):
        eisenstein_series_value(2, 1j)
    with pytest.raises(ValueError):
        eisenstein_lattice_sum(8, 1.0 - 1.0j)


def test_config_validation():
    with pytest.raises(ValueError):
        LatticeSumConfig(max_norm=1)
    with pytest.raises(ValueError):
        LatticeSumConfig(precision=10)
    assert DEFAULT_CONFIG.max_norm == 40_000


def test_high_precision_path_agrees():
    z = 0.1 + 1.1j
    fast = eisenstein_lattice_sum(6, z, LatticeSumConfig(2_000, 15))
    slow = eisenstein_lattice_sum(6, z, LatticeSumConfig(2_000, 30))
    assert abs(fast - slow) < 1e-10
