"""Rogers dilogarithm at the unit-square solution and rational detection of L/pi^2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from threading import Lock

import mpmath
from mpmath import mpf

from .errors import InvalidInputError
from .nahm import Matrix2, unit_square_interval

DEFAULT_PRECISION = 256
DEFAULT_MAX_DENOMINATOR = 720
GUARD_BITS = 32

_PI_CACHE: dict[int, mpf] = {}
_PI_LOCK = Lock()


def _agm_pi(prec: int) -> mpf:
    """Gauss-Legendre iteration; quadratic convergence, so about log2(prec) rounds."""
    with mpmath.workprec(prec + 20):
        a, b = mpf(1), 1 / mpmath.sqrt(2)
        t, p = mpf(1) / 4, mpf(1)
        eps = mpf(2) ** (-prec - 10)
        while abs(a - b) > eps:
            a, b, t, p = (a + b) / 2, mpmath.sqrt(a * b), t - p * ((a - b) / 2) ** 2, 2 * p
        return (a + b) ** 2 / (4 * t)


def pi_at(prec: int) -> mpf:
    """pi to ``prec`` bits, cached per precision (fill is idempotent)."""
    v = _PI_CACHE.get(prec)
    if v is None:
        v = _agm_pi(prec)
        with _PI_LOCK:
            v = _PI_CACHE.setdefault(prec, v)
    return v


def _li2_series(x: mpf, eps: mpf) -> mpf:
    # terms decay like x^k, so x <= 1/2 costs about prec iterations
    s, term, k = mpf(0), x, 1
    while True:
        add = term / (k * k)
        s += add
        if abs(add) < eps:
            return s
        k += 1
        term *= x


def li2(x, precision_bits: int = DEFAULT_PRECISION) -> mpf:
    """Li2 on [0, 1]: direct series up to 1/2, reflection beyond."""
    with mpmath.workprec(precision_bits + GUARD_BITS):
        x = mpf(x)
        if x < 0 or x > 1:
            raise InvalidInputError(f"li2 is only implemented on [0, 1], got {x}")
        eps = mpf(2) ** (-precision_bits - GUARD_BITS)
        pi = pi_at(precision_bits + GUARD_BITS)
        if x == 0:
            return mpf(0)
        if x == 1:
            return pi**2 / 6
        if x <= 0.5:
            return _li2_series(x, eps)
        return pi**2 / 6 - mpmath.log(x) * mpmath.log(1 - x) - _li2_series(1 - x, eps)


def rogers_L(x, precision_bits: int = DEFAULT_PRECISION) -> mpf:
    """L(x) = Li2(x) + log(x) log(1 - x) / 2, continuous on [0, 1]."""
    with mpmath.workprec(precision_bits + GUARD_BITS):
        x = mpf(x)
        if x < 0 or x > 1:
            raise InvalidInputError(f"rogers_L needs 0 <= x <= 1, got {x}")
        if x == 0:
            return mpf(0)
        pi = pi_at(precision_bits + GUARD_BITS)
        if x == 1:
            return pi**2 / 6
        if x > 0.5:
            # L(x) + L(1 - x) = pi^2/6 keeps the series argument small
            return pi**2 / 6 - rogers_L(1 - x, precision_bits)
        return li2(x, precision_bits) + mpmath.log(x) * mpmath.log(1 - x) / 2


def _mpf_to_fraction(v: mpf) -> Fraction:
    man, exp = v.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def detect_pi2_rational(v, max_denominator: int = DEFAULT_MAX_DENOMINATOR,
                        precision_bits: int = DEFAULT_PRECISION) -> Fraction | None:
    """Rational p/q with q <= max_denominator such that |v/pi^2 - p/q| < 2^(-precision_bits/2)."""
    if precision_bits < 64:
        raise InvalidInputError("detection needs at least 64 bits")
    with mpmath.workprec(precision_bits + GUARD_BITS):
        ratio = mpf(v) / pi_at(precision_bits + GUARD_BITS) ** 2
        exact = _mpf_to_fraction(ratio)
    guess = exact.limit_denominator(max_denominator)
    tol = Fraction(1, 2 ** (precision_bits // 2))
    return guess if abs(exact - guess) < tol else None


@dataclass(frozen=True)
class DilogResult:
    matrix: Matrix2
    L_xi: mpf
    ratio: mpf
    detected: Fraction | None
    precision_bits: int
    tolerance_bits: int

    def to_json(self) -> dict:
        digits = int(self.precision_bits * 0.30103)
        return {
            "matrix": self.matrix.to_json(),
            "L_xi": mpmath.nstr(self.L_xi, digits, strip_zeros=False),
            "ratio": mpmath.nstr(self.ratio, digits, strip_zeros=False),
            "detected": None if self.detected is None else str(self.detected),
            "precision_bits": self.precision_bits,
            "tolerance_bits": self.tolerance_bits,
        }


def xi_value(A: Matrix2, precision_bits: int = DEFAULT_PRECISION,
             max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> DilogResult:
    """L(x1) + L(x2) at the solution in (0, 1)^2 and the detected value of its ratio to pi^2."""
    A.require_positive_definite()
    (lo1, hi1), (lo2, hi2) = unit_square_interval(A, precision_bits + GUARD_BITS)
    with mpmath.workprec(precision_bits + GUARD_BITS):
        x1 = mpf(lo1.numerator) / lo1.denominator + mpf((hi1 - lo1).numerator) / (2 * (hi1 - lo1).denominator)
        x2 = mpf(lo2.numerator) / lo2.denominator + mpf((hi2 - lo2).numerator) / (2 * (hi2 - lo2).denominator)
        L = rogers_L(x1, precision_bits) + rogers_L(x2, precision_bits)
        ratio = L / pi_at(precision_bits + GUARD_BITS) ** 2
    detected = detect_pi2_rational(L, max_denominator, precision_bits)
    return DilogResult(A, L, ratio, detected, precision_bits, precision_bits // 2)
