"""Fricke Eisenstein series, arcs, restricted real functions, and
fundamental-domain reduction for the groups of level 1, 2 and 3.

Level p = 1 denotes the classical SL2(Z) tier throughout; it is the oracle
the level 2 and 3 machinery is checked against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, pi

import numpy as np

from .eisenstein import (
    DEFAULT_CONFIG,
    LatticeSumConfig,
    eisenstein_lattice_sum,
    eisenstein_series_value,
)
from .errors import ReductionError
from .qseries import QSeries, eisenstein_qseries

LEVELS = (1, 2, 3)

#: arc opening: theta runs over (pi/2, pi/2 + pi/(2 e_p)) with e_p = 3, 4, 6
ELLIPTIC_PERIOD = {1: 3, 2: 4, 3: 6}
THETA_MAX = {1: 2 * pi / 3, 2: 3 * pi / 4, 3: 5 * pi / 6}

#: valence-formula right-hand side is k / VALENCE_DENOM[p]
VALENCE_DENOM = {1: 12, 2: 8, 3: 6}


@dataclass(frozen=True)
class ArcSpec:
    """The low arc |z| = 1/sqrt(p), theta in (theta_min, theta_max)."""

    level: int
    radius: float
    theta_min: float
    theta_max: float
    open_arc: bool = True


def arc_spec(p: int, open_arc: bool = True) -> ArcSpec:
    _check_level(p)
    return ArcSpec(p, 1 / math.sqrt(p), pi / 2, THETA_MAX[p], open_arc)


def _check_level(p, fricke_only=False):
    allowed = (2, 3) if fricke_only else LEVELS
    if p not in allowed:
        raise ValueError(f"level must be in {allowed}, got {p}")


def _check_weight(k):
    if k % 2 != 0 or k < 4:
        raise ValueError(f"weight must be an even integer >= 4, got {k}")


def arc_point(p: int, theta: float) -> complex:
    """e^(i theta)/sqrt(p)."""
    return cmath.exp(1j * theta) / math.sqrt(p)


def elliptic_points(p: int) -> tuple[complex, complex]:
    """(i/sqrt(p), rho_p): the order-2 corner and the arc endpoint corner."""
    _check_level(p)
    return arc_point(p, pi / 2), arc_point(p, THETA_MAX[p])


def m_count(k: int, p: int) -> int:
    """Predicted number of zeros on the open arc: floor(k/e - t/4), t = k mod 4."""
    _check_weight(k)
    _check_level(p)
    t = 0 if k % 4 == 0 else 2
    return math.floor(Fraction(k, VALENCE_DENOM[p]) - Fraction(t, 4))


@lru_cache(maxsize=None)
def fricke_qseries(k: int, p: int, N: int) -> QSeries:
    """Exact expansion of E*_{k,p} = (p^(k/2) E_k(pz) + E_k(z)) / (p^(k/2) + 1)."""
    _check_weight(k)
    _check_level(p, fricke_only=True)
    ek = eisenstein_qseries(k, N)
    pk = p ** (k // 2)
    coeffs = []
    for n in range(N + 1):
        a = ek.coeffs[n]
        if n % p == 0:
            a += pk * ek.coeffs[n // p]
        coeffs.append(Fraction(a, pk + 1))
    return QSeries(k, p, coeffs, N)


def fricke_eisenstein(k: int, p: int, z: complex,
                      cfg: LatticeSumConfig = DEFAULT_CONFIG,
                      path: str = "series") -> complex:
    """E*_{k,p}(z) by the requested path ("series" or "lattice").

    The series path reduces both arguments into the SL2(Z) fundamental domain
    and uses the exact q-expansion there; the lattice path is the truncated
    defining sum and serves as the independent oracle.
    """
    _check_weight(k)
    _check_level(p, fricke_only=True)
    if path == "series":
        ek = eisenstein_series_value
        e_pz, e_z = ek(k, p * z), ek(k, z)
    elif path == "lattice":
        e_pz = eisenstein_lattice_sum(k, p * z, cfg)
        e_z = eisenstein_lattice_sum(k, z, cfg)
    else:
        raise ValueError(f"unknown path {path!r}")
    pk = p ** (k // 2)
    return (pk * e_pz + e_z) / (pk + 1)


# ---------------------------------------------------------------------------
# Restricted real functions on the arc
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def admissible_representatives(p: int, max_norm: int):
    """Admissible coprime pairs for the pair-sum form of F / F*.

    Admissible means: c odd (p = 2), 3 does not divide c (p = 3), all coprime
    pairs (p = 1). Representatives have c > 0 (plus (0, 1) at level 1); the
    sign pair (-c, -d) is folded in by taking twice the real part. Sorted by
    norm then (c, d). Returns (c, d, norm) arrays.
    """
    _check_level(p)
    cs, ds = [], []
    if p == 1:
        cs.append(0)
        ds.append(1)
    cmax = math.isqrt(max_norm)
    for c in range(1, cmax + 1):
        if p == 2 and c % 2 == 0:
            continue
        if p == 3 and c % 3 == 0:
            continue
        dmax = math.isqrt(max_norm - c * c)
        for d in range(-dmax, dmax + 1):
            if gcd(c, abs(d)) == 1:
                cs.append(c)
                ds.append(d)
    c = np.array(cs, dtype=np.int64)
    d = np.array(ds, dtype=np.int64)
    n = c * c + d * d
    order = np.lexsort((d, c, n))
    c, d, n = c[order], d[order], n[order]
    for arr in (c, d, n):
        arr.setflags(write=False)
    return c, d, n


# crude-tail constants per level: count <= C sqrt(N), |w|^2 >= N / B
_TAIL_COUNT = {1: 6.0, 2: 3.0, 3: 11.0 / 3.0}
_TAIL_FLOOR = {1: 2.0, 2: 3.0, 3: 6.0}


def pair_sum_tail_bound(k: int, p: int, max_norm: int) -> float:
    """Upper bound on the omitted mass of the pair sum beyond max_norm.

    Crude counting bound (valid for k >= 8; reported as inf below that, where
    a doubling estimate takes over): sum_{N > M} C sqrt(N) (N/B)^(-k/2).
    """
    if k < 8:
        return math.inf
    b, c = _TAIL_FLOOR[p], _TAIL_COUNT[p]
    return 2 * c / (k - 3) * b ** (k / 2) * max_norm ** ((3 - k) / 2)


def _pair_cap(k: int, p: int, max_norm: int, target: float = 1e-12) -> int:
    """Smallest truncation norm with analytic tail below target (clamped)."""
    if k < 10:
        return max_norm
    b, c = _TAIL_FLOOR[p], _TAIL_COUNT[p]
    m = (2 * c / (k - 3) * b ** (k / 2) / target) ** (2.0 / (k - 3))
    return int(min(max_norm, max(500, math.ceil(m))))


def f_restricted(k: int, p: int, theta: float,
                 cfg: LatticeSumConfig = DEFAULT_CONFIG) -> float:
    """F_k (p = 1) or F*_{k,p} (p = 2, 3) at angle theta, by the pair sum.

    Conjugate pairs are folded together, so the result is real by
    construction: F = 2 sum over representatives of Re (c e^(i theta/2) +
    sqrt(p) d e^(-i theta/2))^(-k).

    At level 1 the representatives already cover the halved full sum once
    (the classical normalization carries a factor 1/2), so the fold factor
    is 1 there; either way the unit-norm pairs contribute 2 cos(k theta/2).
    """
    _check_weight(k)
    _check_level(p)
    c, d, n = admissible_representatives(p, cfg.max_norm)
    cap = _pair_cap(k, p, cfg.max_norm)
    if cap < cfg.max_norm:
        stop = int(np.searchsorted(n, cap, side="right"))
        c, d = c[:stop], d[:stop]
    half = cmath.exp(0.5j * theta)
    w = c * half + (math.sqrt(p) * d) * half.conjugate()
    fold = 1.0 if p == 1 else 2.0
    return float(fold * np.sum((w ** (-float(k))).real))


def f_restricted_with_tail(k: int, p: int, theta: float,
                           cfg: LatticeSumConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Pair-sum value plus a recorded tail bound for sign acceptance.

    For k >= 8 the analytic counting bound applies; below that it is vacuous,
    so the movement under halving the truncation norm is used instead.
    """
    value = f_restricted(k, p, theta, cfg)
    tail = pair_sum_tail_bound(k, p, min(cfg.max_norm, _pair_cap(k, p, cfg.max_norm)))
    if not math.isfinite(tail):
        half_cfg = LatticeSumConfig(max(cfg.max_norm // 2, 2), cfg.precision)
        tail = abs(value - f_restricted(k, p, theta, half_cfg))
    return value, tail


def f_restricted_transform_path(k: int, p: int, theta: float) -> complex:
    """The alternative route e^(i k theta/2) E*(e^(i theta)/sqrt(p)).

    Must agree with the pair sum and have negligible imaginary part; used as
    the machine check of the odd-c rearrangement identity.
    """
    z = arc_point(p, theta)
    if p == 1:
        val = eisenstein_series_value(k, z)
    else:
        val = fricke_eisenstein(k, p, z)
    return cmath.exp(0.5j * k * theta) * val


# ---------------------------------------------------------------------------
# Fundamental domains and reduction
# ---------------------------------------------------------------------------

_BOUNDARY_EPS = 1e-12


def in_fundamental_domain(z: complex, p: int) -> bool:
    """Membership in the half-open fundamental domain F*(p) (F for p = 1).

    Kept: |z| >= 1/sqrt(p) with -1/2 <= Re <= 0, and |z| > 1/sqrt(p) with
    0 <= Re < 1/2. Ties are resolved to within a small float tolerance.
    """
    _check_level(p)
    z = complex(z)
    if z.imag <= 0:
        return False
    r = abs(z) * math.sqrt(p)
    x = z.real
    if x < -0.5 - _BOUNDARY_EPS or x >= 0.5 - _BOUNDARY_EPS:
        return False
    if x <= _BOUNDARY_EPS:
        return r >= 1 - _BOUNDARY_EPS
    return r > 1 + _BOUNDARY_EPS


@dataclass(frozen=True)
class GroupWord:
    """A word in the generators T: z -> z+1 and W_p: z -> -1/(p z) (S at
    level 1). Stored as steps ("T", n) and ("W",), applied left to right."""

    steps: tuple

    def apply(self, z: complex, p: int) -> complex:
        for step in self.steps:
            if step[0] == "T":
                z = z + step[1]
            elif step[0] == "W":
                z = -1 / (p * z)
            else:
                raise ValueError(f"unknown generator {step[0]!r}")
        return z

    def __len__(self):
        return len(self.steps)


def reduce_to_fundamental_domain(z: complex, p: int) -> tuple[complex, GroupWord]:
    """Move z into F*(p); the returned word maps the reduced point back to z."""
    _check_level(p)
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    w = z
    inverse_steps = []  # maps reduced point back to z, outermost first
    for _ in range(10_000):
        n = math.floor(w.real + 0.5)
        if w.real - n >= 0.5 - _BOUNDARY_EPS:  # land in [-1/2, 1/2)
            n += 1
        if n != 0:
            w = w - n
            inverse_steps.append(("T", n))
        r = abs(w) * math.sqrt(p)
        if r < 1 - _BOUNDARY_EPS or (r <= 1 + _BOUNDARY_EPS and w.real > _BOUNDARY_EPS):
            w = -1 / (p * w)
            inverse_steps.append(("W",))
        elif n == 0:
            break
    else:
        raise ReductionError(
            f"reduction into F*({p}) exceeded its step budget near z={z}"
        )
    return w, GroupWord(tuple(reversed(inverse_steps)))
