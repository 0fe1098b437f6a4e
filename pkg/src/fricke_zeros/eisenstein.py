"""Numerical evaluation of the classical Eisenstein series E_k.

Two independent paths are provided: a truncated coprime lattice sum (the
oracle, straight from the defining sum) and a fast path that reduces the
argument into the standard fundamental domain and evaluates the exact
q-expansion there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import mpmath
import numpy as np

from .errors import ReductionError
from .qseries import eisenstein_qseries

_REDUCTION_BUDGET = 10_000


@dataclass(frozen=True)
class LatticeSumConfig:
    """Truncation policy for the lattice sum: keep coprime (c, d) with
    c^2 + d^2 <= max_norm; precision is the working precision in decimal digits
    (<= 17 selects the fast float path)."""

    max_norm: int = 40_000
    precision: int = 15

    def __post_init__(self):
        if self.max_norm < 2:
            raise ValueError(f"max_norm must be >= 2, got {self.max_norm}")
        if self.precision < 15:
            raise ValueError(f"precision must be >= 15, got {self.precision}")


DEFAULT_CONFIG = LatticeSumConfig()


@lru_cache(maxsize=8)
def coprime_representatives(max_norm: int):
    """Coprime pairs with c > 0 (plus (0, 1)) and c^2 + d^2 <= max_norm.

    For even weight the pairs (c, d) and (-c, -d) contribute identically, so
    summing over these representatives gives the halved full sum exactly.
    Sorted by norm, then (c, d), so truncation is reproducible.
    """
    cs, ds = [0], [1]
    cmax = math.isqrt(max_norm)
    for c in range(1, cmax + 1):
        dmax = math.isqrt(max_norm - c * c)
        for d in range(-dmax, dmax + 1):
            if gcd(c, abs(d)) == 1:
                cs.append(c)
                ds.append(d)
    c = np.array(cs, dtype=np.int64)
    d = np.array(ds, dtype=np.int64)
    order = np.lexsort((d, c, c * c + d * d))
    c, d = c[order], d[order]
    c.setflags(write=False)
    d.setflags(write=False)
    return c, d


def eisenstein_lattice_sum(k: int, z: complex, cfg: LatticeSumConfig = DEFAULT_CONFIG) -> complex:
    """(1/2) sum over coprime (c, d), c^2 + d^2 <= max_norm, of (c z + d)^(-k)."""
    if k % 2 != 0 or k < 4:
        raise ValueError(f"weight must be an even integer >= 4, got {k}")
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    c, d = coprime_representatives(cfg.max_norm)
    if cfg.precision <= 17:
        w = c.astype(np.float64) * z + d.astype(np.float64)
        return complex(np.sum(w ** (-float(k))))
    with mpmath.workdps(cfg.precision):
        zz = mpmath.mpc(z.real, z.imag)
        acc = mpmath.mpc(0)
        for ci, di in zip(c.tolist(), d.tolist()):
            acc += (ci * zz + di) ** (-k)
        return complex(acc)


def sl2_reduce(z: complex):
    """Translate/invert z into |Re| <= 1/2, |z| >= 1.

    Returns (w, jfac) where w is the reduced point and jfac is the product of
    the (c z_i + d) factors picked up along the way, so that
    E_k(z) = jfac^(-k) * E_k(w).
    """
    w = complex(z)
    jfac = complex(1.0)
    for _ in range(_REDUCTION_BUDGET):
        n = math.floor(w.real + 0.5)
        if n != 0:
            w = w - n
        if abs(w) < 1 - 1e-15:
            jfac *= w
            w = -1 / w
        elif n == 0:
            return w, jfac
    raise ReductionError("SL2(Z) reduction did not terminate")


@lru_cache(maxsize=None)
def _float_coeffs(k: int, N: int):
    co = np.array([float(c) for c in eisenstein_qseries(k, N).coeffs])
    co.setflags(write=False)
    return co


def eisenstein_series_value(k: int, z: complex, truncation: int = 80) -> complex:
    """E_k(z) by reduction to the fundamental domain plus the q-expansion.

    Fast float path; accurate to ~1e-12 relative for moderate k because the
    reduced point has Im >= sqrt(3)/2 (|q| < 0.005).
    """
    if k % 2 != 0 or k < 4:
        raise ValueError(f"weight must be an even integer >= 4, got {k}")
    w, jfac = sl2_reduce(z)
    q = cmath.exp(2j * math.pi * w)
    co = _float_coeffs(k, truncation)
    acc = complex(0.0)
    for a in co[::-1]:
        acc = acc * q + a
    return jfac ** (-k) * acc
