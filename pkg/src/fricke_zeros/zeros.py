"""Locating arc zeros by sign alternation plus bisection, measuring elliptic
orders by winding numbers, and auditing the valence formula exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import pi

import numpy as np

from .eisenstein import DEFAULT_CONFIG, LatticeSumConfig, eisenstein_series_value
from .errors import CountMismatchError, IndeterminateSignError, UnstableWindingError
from .fricke import (
    THETA_MAX,
    VALENCE_DENOM,
    ELLIPTIC_PERIOD,
    arc_point,
    elliptic_points,
    f_restricted,
    f_restricted_with_tail,
    fricke_eisenstein,
    fricke_qseries,
    m_count,
)
from .qseries import eisenstein_qseries

BISECT_TOL = 1e-10
WINDING_SAMPLES = 256


@dataclass(frozen=True)
class ZeroRecord:
    """One located arc zero: the angle, the point e^(i theta)/sqrt(p), the
    final bisection bracket with its endpoint values, and the multiplicity
    (1 for a sign-change zero)."""

    theta: float
    point: complex
    bracket: tuple[float, float]
    f_lo: float
    f_hi: float
    multiplicity: int = 1

    def to_dict(self):
        return {
            "theta": self.theta,
            "point": [self.point.real, self.point.imag],
            "bracket": list(self.bracket),
            "f_lo": self.f_lo,
            "f_hi": self.f_hi,
            "multiplicity": self.multiplicity,
        }


def sample_points(k: int, p: int) -> list[float]:
    """The integer points theta = 2 m pi / k inside the closed arc interval.

    At these angles cos(k theta / 2) is +-1, so the restricted function has a
    guaranteed sign wherever the remainder bound holds.
    """
    # m in [k/4, k * theta_max / (2 pi)], fenced exactly with rationals
    hi_frac = {1: Fraction(1, 3), 2: Fraction(3, 8), 3: Fraction(5, 12)}[p]
    m_lo = math.ceil(Fraction(k, 4))
    m_hi = math.floor(k * hi_frac)
    return [2.0 * m * pi / k for m in range(m_lo, m_hi + 1)]


def locate_zeros(k: int, p: int, tol: float = BISECT_TOL,
                 cfg: LatticeSumConfig = DEFAULT_CONFIG) -> list[ZeroRecord]:
    """All zeros of the restricted function on the open arc, via the sign
    alternation at the integer points plus bisection.

    Fails loudly (CountMismatchError) if the number of sign alternations
    disagrees with the predicted count m_p(k) - that check IS the theorem at
    this weight. Endpoint samples where the function vanishes to elliptic
    order are dropped; those zeros belong to order_at_point.
    """
    if tol < 1e-12:
        raise ValueError(f"tolerance must be >= 1e-12, got {tol}")
    thetas = sample_points(k, p)
    lo_end, hi_end = pi / 2, THETA_MAX[p]
    kept: list[tuple[float, float]] = []
    for th in thetas:
        value, tail = f_restricted_with_tail(k, p, th, cfg)
        if abs(value) <= 10 * tail:
            at_endpoint = (
                abs(th - lo_end) < 1e-9 or abs(th - hi_end) < 1e-9
            )
            if at_endpoint:
                continue  # elliptic-point zero, owned by order_at_point
            raise IndeterminateSignError(
                f"sample at theta={th:.6f} (k={k}, p={p}) has |f|={abs(value):.3g} "
                f"below 10x tail bound {tail:.3g}"
            )
        kept.append((th, value))
    changes = [
        (a, fa, b, fb)
        for (a, fa), (b, fb) in zip(kept, kept[1:])
        if (fa < 0) != (fb < 0)
    ]
    expected = m_count(k, p)
    if len(changes) != expected:
        raise CountMismatchError(
            f"k={k}, p={p}: found {len(changes)} sign alternations, "
            f"predicted m={expected}"
        )
    records = []
    for a, fa, b, fb in changes:
        lo, flo, hi, fhi = a, fa, b, fb
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            fm = f_restricted(k, p, mid, cfg)
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi, fhi = mid, fm
        theta = 0.5 * (lo + hi)
        records.append(ZeroRecord(
            theta=theta, point=arc_point(p, theta),
            bracket=(lo, hi), f_lo=flo, f_hi=fhi, multiplicity=1,
        ))
    return records


def winding_number(f, z0: complex, radius: float,
                   samples: int = WINDING_SAMPLES) -> int:
    """Winding of f around the circle |z - z0| = radius: total unwrapped
    argument change divided by 2 pi."""
    ths = np.linspace(0.0, 2.0 * pi, samples, endpoint=False)
    vals = [f(z0 + radius * cmath.exp(1j * t)) for t in ths]
    vals.append(vals[0])
    args = np.unwrap(np.angle(np.array(vals, dtype=complex)))
    return round(float(args[-1] - args[0]) / (2.0 * pi))


def stable_winding(f, z0: complex, radius: float, retries: int = 4) -> int:
    """Winding number, required to agree under radius halving; shrinks and
    retries when it does not (a nearby zero sat inside the larger circle)."""
    w1 = winding_number(f, z0, radius)
    w2 = winding_number(f, z0, radius / 2)
    for _ in range(retries):
        if w1 == w2:
            return w2
        radius /= 2
        w1 = w2
        w2 = winding_number(f, z0, radius / 2)
    if w1 != w2:
        raise UnstableWindingError(
            f"winding at z0={z0} did not stabilize (last counts {w1}, {w2})"
        )
    return w2


def _form_value(k: int, p: int):
    if p == 1:
        return lambda z: eisenstein_series_value(k, z)
    return lambda z: fricke_eisenstein(k, p, z)


def order_at_point(k: int, p: int, z0: complex, radius: float | None = None,
                   cfg: LatticeSumConfig = DEFAULT_CONFIG) -> int:
    """Order of E*_{k,p} (E_k at level 1) at z0, by winding number."""
    if radius is None:
        radius = 0.03 / math.sqrt(p)
    z0 = complex(z0)
    if z0.imag <= radius:
        raise ValueError("circle must stay inside the upper half-plane")
    return stable_winding(_form_value(k, p), z0, radius)


def expected_elliptic_orders(k: int, p: int) -> tuple[int, int]:
    """(s_k, t_k): predicted orders at i/sqrt(p) and rho_p, from the
    congruences 2 s_k = k (mod 4) and -2 t_k = k (mod 2 e_p)."""
    if k % 2 != 0 or k < 4:
        raise ValueError(f"requires even k >= 4, got {k}")
    e = ELLIPTIC_PERIOD[p]
    s = (k // 2) % 2
    t = (-(k // 2)) % e
    return s, t


@lru_cache(maxsize=None)
def _measured_orders(k: int, p: int) -> tuple[int, int]:
    zi, zrho = elliptic_points(p)
    return order_at_point(k, p, zi), order_at_point(k, p, zrho)


@dataclass(frozen=True)
class ValenceReport:
    """Exact-rational audit of the valence formula for one (k, p)."""

    k: int
    p: int
    v_infinity: int
    v_i: int
    v_rho: int
    interior_zeros: tuple[ZeroRecord, ...]
    lhs: Fraction
    rhs: Fraction
    sub_checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs and all(self.sub_checks.values())

    def to_dict(self):
        return {
            "k": self.k,
            "p": self.p,
            "v_infinity": self.v_infinity,
            "v_i": self.v_i,
            "v_rho": self.v_rho,
            "interior_zeros": [z.to_dict() for z in self.interior_zeros],
            "lhs": f"{self.lhs.numerator}/{self.lhs.denominator}",
            "rhs": f"{self.rhs.numerator}/{self.rhs.denominator}",
            "sub_checks": dict(self.sub_checks),
            "passed": self.passed,
        }


def valence_audit(k: int, p: int, cfg: LatticeSumConfig = DEFAULT_CONFIG) -> ValenceReport:
    """Assemble v_inf, the elliptic orders, and the interior arc zeros, and
    check v_inf + v_i/2 + v_rho/e + sum(mult) = k/8, k/6 or k/12 exactly."""
    series = fricke_qseries(k, p, 10) if p != 1 else eisenstein_qseries(k, 10)
    v_inf = series.leading
    if v_inf is None:
        raise ValueError("series is identically zero to truncation")
    v_i, v_rho = _measured_orders(k, p)
    zeros = tuple(locate_zeros(k, p, cfg=cfg))
    e = ELLIPTIC_PERIOD[p]
    lhs = (
        Fraction(v_inf)
        + Fraction(v_i, 2)
        + Fraction(v_rho, e)  # elliptic weights 1/3, 1/4, 1/6
        + sum(z.multiplicity for z in zeros)
    )
    rhs = Fraction(k, VALENCE_DENOM[p])
    sub = {
        # the conclusion step of the arc-location argument
        "arc_count_bound": rhs - m_count(k, p) - Fraction(v_i, 2) < 1,
        "orders_match_congruence": (v_i, v_rho) == expected_elliptic_orders(k, p),
    }
    if k % 4 == 2:
        # forced vanishing at the order-2 elliptic point
        zi = elliptic_points(p)[0]
        sub["forced_vanishing_at_i"] = abs(_form_value(k, p)(zi)) < 1e-8
    return ValenceReport(
        k=k, p=p, v_infinity=v_inf, v_i=v_i, v_rho=v_rho,
        interior_zeros=zeros, lhs=lhs, rhs=rhs, sub_checks=sub,
    )
