"""Truncated expansions of rank-2 Nahm sums with exact rational coefficients."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt, lcm

from .errors import InvalidInputError
from .nahm import Matrix2

ROW = "row"
DIAGONAL = "diagonal"
SHUFFLED = "shuffled"
ENUMERATIONS = (ROW, DIAGONAL, SHUFFLED)

DEFAULT_MAX_DENOMINATOR = 60


@dataclass(frozen=True)
class QSeriesSpec:
    matrix: Matrix2
    B: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    C: Fraction = Fraction(0)
    order: Fraction = Fraction(10)
    max_denominator: int = DEFAULT_MAX_DENOMINATOR

    def __post_init__(self):
        object.__setattr__(self, "B", tuple(Fraction(b) for b in self.B))
        object.__setattr__(self, "C", Fraction(self.C))
        object.__setattr__(self, "order", Fraction(self.order))
        if len(self.B) != 2:
            raise InvalidInputError("B must have two entries")
        if self.order <= 0:
            raise InvalidInputError("order must be positive")
        if not self.matrix.is_positive_definite():
            raise InvalidInputError(f"{self.matrix} is not positive definite")
        for v in (*self.B, self.C):
            if v.denominator > self.max_denominator:
                raise InvalidInputError(f"denominator of {v} exceeds {self.max_denominator}")


@dataclass(frozen=True)
class QSeries:
    """sum of coeffs[k] * q^(k / D) over the stored k, all with k / D <= order."""

    D: int
    coeffs: dict[int, Fraction] = field(default_factory=dict)
    order: Fraction = Fraction(0)

    def __post_init__(self):
        clean = {k: Fraction(c) for k, c in sorted(self.coeffs.items()) if c}
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "order", Fraction(self.order))

    def coefficient(self, exponent) -> Fraction:
        e = Fraction(exponent) * self.D
        if e.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(e), Fraction(0))

    def items(self) -> list[tuple[Fraction, Fraction]]:
        """(exponent, coefficient) pairs in increasing exponent."""
        return [(Fraction(k, self.D), c) for k, c in self.coeffs.items()]

    def rescaled(self, D: int) -> "QSeries":
        if D % self.D:
            raise InvalidInputError(f"{D} is not a multiple of {self.D}")
        f = D // self.D
        return QSeries(D, {k * f: c for k, c in self.coeffs.items()}, self.order)

    def to_json(self) -> dict:
        return {"D": self.D, "coeffs": [[k, f"{c.numerator}/{c.denominator}"] for k, c in self.coeffs.items()]}

    def __str__(self):
        terms = []
        for e, c in self.items():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            cs = str(c)
            terms.append(mono if (c == 1 and mono) else (f"{cs}*{mono}" if mono else cs))
        return " + ".join(terms) or "0"


def _inverse_pochhammer_int(n: int, N: int) -> list[int]:
    """Integer coefficients of 1/(q)_n up to q^N: partitions into parts <= n."""
    out = [0] * (N + 1)
    out[0] = 1
    for part in range(1, n + 1):
        for k in range(part, N + 1):
            out[k] += out[k - part]
    return out


def pochhammer_inverse(n: int, order) -> QSeries:
    order = Fraction(order)
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    if order <= 0:
        raise InvalidInputError("order must be positive")
    N = floor(order)
    return QSeries(1, dict(enumerate(_inverse_pochhammer_int(n, N))), order)


def _exponent(spec: QSeriesSpec, n1: int, n2: int) -> Fraction:
    A = spec.matrix
    quad = Fraction(A.a * n1 * n1 + 2 * A.b * n1 * n2 + A.d * n2 * n2, 2)
    return quad + spec.B[0] * n1 + spec.B[1] * n2 + spec.C


def exponent_denominator(spec: QSeriesSpec) -> int:
    """Least common denominator of all exponents, found on one period of the lattice.

    Q(n) mod 1 is periodic in each coordinate with period P = 2 * lcm(den B1, den B2).
    """
    P = 2 * lcm(spec.B[0].denominator, spec.B[1].denominator)
    D = 1
    for n1 in range(P):
        for n2 in range(P):
            D = lcm(D, _exponent(spec, n1, n2).denominator)
    return D


def _lambda_lower(A: Matrix2) -> Fraction:
    """Positive rational lower bound on the smaller eigenvalue of A."""
    det = A.det
    # (a+d-sqrt((a-d)^2+4b^2))/2 with the root rounded up
    disc = (A.a - A.d) ** 2 + 4 * A.b * A.b
    r = isqrt(disc)
    if r * r < disc:
        r += 1
    via_root = Fraction(A.a + A.d - r, 2)
    # lambda_min >= det / trace always
    return max(via_root, Fraction(det, A.a + A.d))


def _norm_bound(spec: QSeriesSpec) -> int:
    """R with every n of Euclidean norm > R having exponent > order.

    Q(n) >= lam/2 |n|^2 - |B| |n| + C, and |B| <= |B1| + |B2|.
    """
    lam = _lambda_lower(spec.matrix)
    beta = abs(spec.B[0]) + abs(spec.B[1])
    rhs = spec.order - spec.C
    # lam/2 r^2 - beta r - rhs > 0 for r > R
    R = 0
    while Fraction(lam, 2) * R * R - beta * R - rhs <= 0:
        R += 1
    return R


def _lattice(R: int, mode: str, seed: int) -> list[tuple[int, int]]:
    pts = [(i, j) for i in range(R + 1) for j in range(R + 1) if i * i + j * j <= R * R]
    if mode == ROW:
        return pts
    if mode == DIAGONAL:
        return sorted(pts, key=lambda p: (p[0] + p[1], p[0]))
    if mode == SHUFFLED:
        random.Random(seed).shuffle(pts)
        return pts
    raise InvalidInputError(f"unknown enumeration {mode!r}; expected one of {ENUMERATIONS}")


def nahm_sum(spec: QSeriesSpec, enumeration: str = ROW, seed: int = 0) -> QSeries:
    """f_{A,B,C}(q) = sum over n >= 0 of q^(n.A.n/2 + B.n + C) / ((q)_{n1} (q)_{n2}), truncated at order."""
    D = exponent_denominator(spec)
    R = _norm_bound(spec)
    terms = []
    for n1, n2 in _lattice(R, enumeration, seed):
        e = _exponent(spec, n1, n2)
        if e <= spec.order:
            terms.append((n1, n2, e))
    # exponents can be negative when B or C is, so the needed depth is order - min exponent
    N = max((floor(spec.order - e) for _, _, e in terms), default=0)
    cache: dict[int, list[int]] = {}

    def poch(n: int) -> list[int]:
        # up to q^N, 1/(q)_n no longer depends on n once n >= N
        n = min(n, N)
        if n not in cache:
            cache[n] = _inverse_pochhammer_int(n, N)
        return cache[n]

    out: dict[int, Fraction] = {}
    for n1, n2, e in terms:
        base = int(e * D)
        p1, p2 = poch(n1), poch(n2)
        room = floor(spec.order - e)
        for i in range(room + 1):
            if not p1[i]:
                continue
            for j in range(room - i + 1):
                k = base + (i + j) * D
                out[k] = out.get(k, Fraction(0)) + p1[i] * p2[j]
    return QSeries(D, out, spec.order)


def series_equal(x: QSeries, y: QSeries, up_to) -> bool:
    up_to = Fraction(up_to)
    if up_to <= 0:
        raise InvalidInputError("up_to must be positive")
    D = lcm(x.D, y.D)
    xs, ys = x.rescaled(D), y.rescaled(D)
    cut = up_to * D
    a = {k: c for k, c in xs.coeffs.items() if k <= cut}
    b = {k: c for k, c in ys.coeffs.items() if k <= cut}
    return a == b
