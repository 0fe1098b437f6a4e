"""Truncated q-expansions with exact rational coefficients.

Everything here stays in exact arithmetic (``fractions.Fraction``); floats
only appear at evaluation time in :func:`evaluate_qseries`.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

import mpmath

from .errors import LevelMismatchError, TailBoundError


def divisor_sum(n: int, m: int) -> int:
    """sigma_m(n) = sum of d^m over the divisors d of n."""
    if n < 1:
        raise ValueError(f"divisor_sum requires n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**m
            e = n // d
            if e != d:
                total += e**m
        d += 1
    return total


@lru_cache(maxsize=None)
def _bernoulli_upto(n: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1 (convention with B_2 = 1/6)
    vals = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum(comb(m + 1, j) * vals[j] for j in range(m))
        vals.append(Fraction(-acc, m + 1))
    return tuple(vals)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k (B_2 = 1/6, B_4 = -1/30)."""
    if k < 2 or k % 2 != 0:
        raise ValueError(f"bernoulli requires even k >= 2, got {k}")
    return _bernoulli_upto(k)[k]


def _check_weight(k: int) -> None:
    if k % 2 != 0 or k < 4:
        raise ValueError(f"weight must be an even integer >= 4, got {k}")


class QSeries:
    """A weight-k, level-p Fourier expansion truncated at exponent N.

    ``coeffs[n]`` is the exact rational coefficient of q^n, 0 <= n <= truncation.
    """

    __slots__ = ("weight", "level", "coeffs", "truncation")

    def __init__(self, weight, level, coeffs, truncation=None):
        if level not in (1, 2, 3):
            raise ValueError(f"level must be 1, 2 or 3, got {level}")
        coeffs = [Fraction(c) for c in coeffs]
        if truncation is None:
            truncation = len(coeffs) - 1
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        if len(coeffs) > truncation + 1:
            coeffs = coeffs[: truncation + 1]
        else:
            coeffs += [Fraction(0)] * (truncation + 1 - len(coeffs))
        self.weight = int(weight)
        self.level = int(level)
        self.coeffs = coeffs
        self.truncation = int(truncation)

    @property
    def leading(self):
        """Smallest exponent with nonzero coefficient (the cusp order v_inf), or None."""
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return n
        return None

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:4])
        return (
            f"QSeries(weight={self.weight}, level={self.level}, "
            f"N={self.truncation}, coeffs=[{head}, ...])"
        )

    def _check_compatible(self, other, same_weight):
        if self.level != other.level:
            raise LevelMismatchError(
                f"levels differ: {self.level} vs {other.level}"
            )
        if same_weight and self.weight != other.weight:
            raise ValueError(
                f"weights differ: {self.weight} vs {other.weight}"
            )

    def __add__(self, other):
        self._check_compatible(other, same_weight=True)
        n = min(self.truncation, other.truncation)
        return QSeries(
            self.weight,
            self.level,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            n,
        )

    def __sub__(self, other):
        self._check_compatible(other, same_weight=True)
        n = min(self.truncation, other.truncation)
        return QSeries(
            self.weight,
            self.level,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            n,
        )

    def __neg__(self):
        return QSeries(self.weight, self.level, [-c for c in self.coeffs], self.truncation)

    def __mul__(self, other):
        if isinstance(other, (numbers.Rational, int)):
            r = Fraction(other)
            return QSeries(self.weight, self.level, [c * r for c in self.coeffs], self.truncation)
        self._check_compatible(other, same_weight=False)
        n = min(self.truncation, other.truncation)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return QSeries(self.weight + other.weight, self.level, out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (numbers.Rational, int)):
            return self * (Fraction(1) / Fraction(other))
        self._check_compatible(other, same_weight=False)
        vb = other.leading
        if vb is None:
            raise ZeroDivisionError("division by the zero series")
        va = self.leading
        if va is None:
            # 0 / b = 0 at the shared truncation
            n = min(self.truncation, other.truncation) - vb
            return QSeries(self.weight - other.weight, self.level, [0], max(n, 0))
        if va < vb:
            raise ValueError(
                f"division impossible: v_inf(numerator)={va} < v_inf(denominator)={vb}"
            )
        shift = va - vb
        n = min(self.truncation, other.truncation) - vb
        m = n - shift + 1  # terms of the unit-leading quotient
        lead = other.coeffs[vb]
        r = [Fraction(0)] * m
        for i in range(m):
            acc = self.coeffs[va + i]
            for j in range(1, i + 1):
                acc -= other.coeffs[vb + j] * r[i - j]
            r[i] = acc / lead
        out = [Fraction(0)] * shift + r
        return QSeries(self.weight - other.weight, self.level, out, n)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries(0, self.level, [1], self.truncation)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def agrees_with(self, other, upto=None) -> bool:
        """Exact coefficient equality up to the shared (or given) truncation."""
        n = min(self.truncation, other.truncation)
        if upto is not None:
            n = min(n, upto)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.level == other.level
            and self.agrees_with(other)
        )

    def __hash__(self):
        return hash((self.weight, self.level, tuple(self.coeffs)))

    def coeff_strings(self) -> list[str]:
        """Coefficients as canonical "num/den" strings (JSON export form)."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


@lru_cache(maxsize=None)
def eisenstein_qseries(k: int, N: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n, truncated at N."""
    _check_weight(k)
    if N < 0:
        raise ValueError("truncation must be >= 0")
    factor = Fraction(-2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [factor * divisor_sum(n, k - 1) for n in range(1, N + 1)]
    return QSeries(k, 1, coeffs, N)


class EvalResult(NamedTuple):
    value: complex
    tail: float


def evaluate_qseries(s: QSeries, z: complex, tolerance: float = 1e-9,
                     precision: int = 30) -> EvalResult:
    """Evaluate sum a_n q^n at q = exp(2 pi i z), with a tail-bound estimate.

    The tail bound is max|a_n| * |q|^(N+1) / (1 - |q|); if it exceeds
    ``tolerance`` the truncation cannot resolve the value here and a
    :class:`TailBoundError` is raised.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    with mpmath.workdps(precision):
        q = mpmath.expjpi(2 * mpmath.mpc(z.real, z.imag))
        absq = abs(q)
        big = max(abs(c) for c in s.coeffs)
        tail = float(big * absq ** (s.truncation + 1) / (1 - absq))
        if tail > tolerance:
            raise TailBoundError(
                f"tail bound {tail:.3g} exceeds tolerance {tolerance:.3g} "
                f"at Im(z)={z.imag:.4f} with truncation {s.truncation}"
            )
        acc = mpmath.mpc(0)
        for c in reversed(s.coeffs):
            acc = acc * q + mpmath.mpf(c.numerator) / c.denominator
        return EvalResult(complex(acc), tail)
