"""Spaces of modular forms for the level-2 and level-3 Fricke groups: the
cusp-form generators built from Eisenstein combinations, echelon bases with
distinct leading exponents, dimension formulas, and the verification of the
level-3 order table.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import pi

import numpy as np

from .errors import EchelonError
from .fricke import THETA_MAX, arc_point, elliptic_points, fricke_qseries
from .bounds import BoundCertificate
from .qseries import QSeries
from .zeros import expected_elliptic_orders, stable_winding

DELTA_NAMES = ("delta2", "d3_8", "d3_10", "d3_12_0", "d3_12_1", "d3_14")


@lru_cache(maxsize=None)
def build_delta(name: str, N: int = 50) -> QSeries:
    """The cusp-form generators, exactly per their defining combinations.

    delta2  = (17/1152) ((E*_{4,2})^2 - E*_{8,2})
    d3_8    = (41/1728) ((E*_{4,3})^2 - E*_{8,3})
    d3_10   = (61/432)  (E*_{4,3} E*_{6,3} - E*_{10,3})
    d3_12_0 = d3_8^2 / E*_{4,3}
    d3_12_1 = d3_8 * E*_{4,3}
    d3_14   = d3_10 * E*_{4,3}
    """
    if N < 2:
        raise ValueError("truncation must be >= 2")
    if name == "delta2":
        e4 = fricke_qseries(4, 2, N)
        return (e4 * e4 - fricke_qseries(8, 2, N)) * Fraction(17, 1152)
    e4 = fricke_qseries(4, 3, N)
    if name == "d3_8":
        return (e4 * e4 - fricke_qseries(8, 3, N)) * Fraction(41, 1728)
    if name == "d3_10":
        return (e4 * fricke_qseries(6, 3, N) - fricke_qseries(10, 3, N)) * Fraction(61, 432)
    if name == "d3_12_0":
        d8 = build_delta("d3_8", N)
        return (d8 * d8) / e4
    if name == "d3_12_1":
        return build_delta("d3_8", N) * e4
    if name == "d3_14":
        return build_delta("d3_10", N) * e4
    raise ValueError(f"unknown delta form {name!r}; expected one of {DELTA_NAMES}")


def dim_space(k: int, p: int) -> int:
    """dim M_{k,p} by the piecewise floor formulas (0 for k < 0, k = 2, odd k)."""
    if p not in (2, 3):
        raise ValueError(f"level must be 2 or 3, got {p}")
    if k < 0 or k == 2 or k % 2 != 0:
        return 0
    if p == 2:
        base = k // 8
        return base if k % 8 == 2 else base + 1
    base = k // 6
    return base if k % 12 in (2, 6) else base + 1


def _unit_series(p: int, N: int) -> QSeries:
    return QSeries(0, p, [1], N)


def _estar(k: int, p: int, N: int) -> QSeries:
    return _unit_series(p, N) if k == 0 else fricke_qseries(k, p, N)


@dataclass(frozen=True)
class SpaceDescriptor:
    """A weight-k space: its dimension, an echelon basis (pairwise-distinct
    leading exponents), and a textual witness of how it was assembled."""

    k: int
    p: int
    dimension: int
    basis: tuple[QSeries, ...]
    decomposition: str

    def to_dict(self):
        return {
            "k": self.k,
            "p": self.p,
            "dimension": self.dimension,
            "basis": [b.coeff_strings() for b in self.basis],
            "leading_exponents": [b.leading for b in self.basis],
            "decomposition": self.decomposition,
        }


@lru_cache(maxsize=None)
def _basis_elements(k: int, p: int, N: int) -> tuple[QSeries, ...]:
    if k < 0 or k == 2:
        return ()
    if k == 0:
        return (_unit_series(p, N),)
    if p == 2:
        if k in (4, 6, 10):
            return (fricke_qseries(k, 2, N),)
        d2 = build_delta("delta2", N)
        return (fricke_qseries(k, 2, N),) + tuple(
            d2 * f for f in _basis_elements(k - 8, 2, N)
        )
    # level 3: cusp part is M0_{12,3} * M_{k-12,3}; pick per leading exponent
    if k in (4, 6):
        return (fricke_qseries(k, 3, N),)
    if k in (8, 10, 14):
        return (fricke_qseries(k, 3, N), build_delta(f"d3_{k}", N))
    if k == 12:
        return (
            fricke_qseries(12, 3, N),
            build_delta("d3_12_1", N),
            build_delta("d3_12_0", N),
        )
    d0 = build_delta("d3_12_0", N)
    d1 = build_delta("d3_12_1", N)
    prev = _basis_elements(k - 12, 3, N)
    by_leading: dict[int, QSeries] = {}
    for f in prev:
        g = d1 * f
        by_leading.setdefault(g.leading, g)
    for f in prev:
        g = d0 * f
        by_leading.setdefault(g.leading, g)
    dim = dim_space(k, 3)
    cusp = []
    for v in range(1, dim):
        if v not in by_leading:
            raise EchelonError(
                f"no cusp element with leading exponent {v} at weight {k}"
            )
        cusp.append(by_leading[v])
    return (fricke_qseries(k, 3, N),) + tuple(cusp)


def build_basis(k: int, p: int, N: int = 50) -> SpaceDescriptor:
    """Echelon basis of M_{k,p} with leading exponents 0..dim-1.

    Assembled from the Eisenstein line plus cusp products of the generator
    forms; an EchelonError means two candidates collided, which would
    contradict the direct-sum decomposition of the space.
    """
    if k % 2 != 0 or k < 4:
        raise ValueError(f"requires even k >= 4, got {k}")
    basis = _basis_elements(k, p, N)
    dim = dim_space(k, p)
    leadings = [b.leading for b in basis]
    if len(set(leadings)) != len(leadings):
        raise EchelonError(f"repeated leading exponent among {leadings}")
    if len(basis) != dim:
        raise EchelonError(
            f"assembled {len(basis)} elements but dim M_({k},{p}) = {dim}"
        )
    if p == 2:
        witness = "E(k) + Delta2 * M(k-8)"
    else:
        witness = "E(k) + M0(12) * M(k-12), selected by leading exponent"
    return SpaceDescriptor(k=k, p=p, dimension=dim, basis=basis, decomposition=witness)


# ---------------------------------------------------------------------------
# Direct evaluation of exact series (for winding numbers and arc signs)
# ---------------------------------------------------------------------------

def _float_coeffs(series: QSeries):
    return np.array([float(c) for c in series.coeffs])


def _series_callable(series: QSeries):
    co = _float_coeffs(series)[::-1]
    def f(z: complex) -> complex:
        q = cmath.exp(2j * pi * z)
        acc = 0j
        for a in co:
            acc = acc * q + a
        return acc
    return f


def series_order_at(series: QSeries, z0: complex, radius: float = 0.015) -> int:
    """Order of the form at z0 by winding of the directly evaluated series."""
    return stable_winding(_series_callable(series), z0, radius)


def arc_sign_changes(series: QSeries, grid: int = 2000,
                     rel_floor: float = 1e-8) -> int:
    """Number of sign changes of e^(i k theta/2) f(e^(i theta)/sqrt(p)) on the
    open arc, ignoring samples below rel_floor of the maximum (the endpoint
    zeros would otherwise inject noise-level flips)."""
    p, k = series.level, series.weight
    thetas = np.linspace(pi / 2, THETA_MAX[p], grid + 2)[1:-1]
    f = _series_callable(series)
    vals = np.array([
        (cmath.exp(0.5j * k * t) * f(arc_point(p, t))).real for t in thetas
    ])
    floor = rel_floor * np.max(np.abs(vals))
    signs = np.sign(vals[np.abs(vals) > floor])
    return int(np.sum(signs[:-1] != signs[1:]))


# (k, form name, v_inf, v_{i/sqrt3}, v_{rho_3}, simple zeros on the open arc)
APPENDIX_TABLE_3 = (
    (4, "E4", 0, 0, 4, 0),
    (6, "E6", 0, 1, 3, 0),
    (8, "E8", 0, 0, 2, 1),
    (8, "d3_8", 1, 0, 2, 0),
    (10, "E10", 0, 1, 1, 1),
    (10, "d3_10", 1, 1, 1, 0),
    (12, "E12", 0, 0, 0, 2),
    (12, "d3_12_0", 2, 0, 0, 0),
    (12, "d3_12_1", 1, 0, 6, 0),
    (14, "E14", 0, 1, 5, 1),
    (14, "d3_14", 1, 1, 5, 0),
)


def _appendix_form(name: str, N: int) -> QSeries:
    if name.startswith("E"):
        return fricke_qseries(int(name[1:]), 3, N)
    return build_delta(name, N)


def verify_appendix_table(N: int = 120) -> list[BoundCertificate]:
    """Measure (v_inf, v_{i/sqrt3}, v_{rho_3}, arc zero count) for each of the
    11 tabulated level-3 forms and certify them against the table.

    These are equality checks packaged as certificates: the margin is
    1/2 - |measured - expected|, positive iff the integers agree.
    """
    zi, zrho = elliptic_points(3)
    certs = []
    for k, name, v_inf, v_i, v_rho, v3 in APPENDIX_TABLE_3:
        form = _appendix_form(name, N)
        measured = {
            "v_inf": form.leading if form.leading is not None else -1,
            "v_i": series_order_at(form, zi),
            "v_rho": series_order_at(form, zrho),
            "V3": arc_sign_changes(form),
        }
        expected = {"v_inf": v_inf, "v_i": v_i, "v_rho": v_rho, "V3": v3}
        for key in ("v_inf", "v_i", "v_rho", "V3"):
            certs.append(BoundCertificate(
                name=f"appendix:{name}:k={k}:{key}", k=k,
                lhs_max=abs(measured[key] - expected[key]), rhs=0.5,
                grid=f"winding/sign measurement at truncation {N}",
            ))
    return certs


def min_order_bound_check(k: int, p: int, N: int = 80) -> BoundCertificate:
    """Every basis element of M_{k,p} vanishes at the elliptic points to at
    least the congruence orders (s_k, t_k), with equality for E*_{k,p}.

    The margin is 1/2 + the smallest measured slack, so the certificate
    passes iff no element falls short and the Eisenstein row is exact.
    """
    s, t = expected_elliptic_orders(k, p)
    zi, zrho = elliptic_points(p)
    desc = build_basis(k, p, N)
    slacks = []
    estar_exact = True
    for idx, form in enumerate(desc.basis):
        vi = series_order_at(form, zi)
        vr = series_order_at(form, zrho)
        slacks.append(min(vi - s, vr - t))
        if idx == 0 and (vi, vr) != (s, t):
            estar_exact = False
    margin_src = 0.5 + min(slacks) if estar_exact else -0.5
    return BoundCertificate(
        name=f"minorder:k={k},p={p}", k=k,
        lhs_max=-margin_src, rhs=0.0,
        grid=f"winding numbers for all {len(desc.basis)} basis elements, "
             f"truncation {N}; congruence orders (s,t)=({s},{t})",
    )
