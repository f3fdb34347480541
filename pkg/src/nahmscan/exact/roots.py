"""Certified root isolation.

Real roots are isolated exactly by Descartes' rule of signs with dyadic
bisection. Complex roots start from companion-matrix eigenvalues, are
polished by Aberth iterations in ball arithmetic and certified with
Smith's inclusion discs: when the discs are pairwise disjoint each holds
exactly one root, and a disc centred on the real axis holds a real root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

import flint
import numpy as np

from ..errors import InvalidInputError, RefinementFailure
from .algebra import squarefree_decompose
from .poly import UniPoly

DEFAULT_WIDTH = Fraction(1, 2**53)
PRECISION_CAP = 2000


# ---------------------------------------------------------------- dyadics

def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def dyadic_str(q: Fraction) -> str:
    """Exact ``"p/2^k"`` encoding of a dyadic rational."""
    q = Fraction(q)
    if not is_dyadic(q):
        raise InvalidInputError(f"{q} is not dyadic")
    return f"{q.numerator}/2^{q.denominator.bit_length() - 1}"


def parse_dyadic(s: str) -> Fraction:
    num, _, exp = s.partition("/2^")
    return Fraction(int(num), 2 ** int(exp))


def _floor_dyadic(q: Fraction, k: int) -> Fraction:
    return Fraction(floor(q * 2**k), 2**k)


def _ceil_dyadic(q: Fraction, k: int) -> Fraction:
    return Fraction(ceil(q * 2**k), 2**k)


def _grid_bits(width: Fraction) -> int:
    # grid spacing at most width / 4
    k = 2
    while Fraction(1, 2**k) > width / 4:
        k += 1
    return k


# ---------------------------------------------------------------- RootBox

@dataclass(frozen=True)
class RootBox:
    real_part: tuple[Fraction, Fraction]
    imag_part: tuple[Fraction, Fraction]
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise InvalidInputError("multiplicity must be positive")
        for lo, hi in (self.real_part, self.imag_part):
            if lo > hi:
                raise InvalidInputError("empty interval")

    @property
    def is_real(self) -> bool:
        return self.imag_part == (0, 0)

    @property
    def straddles_real_axis(self) -> bool:
        return self.imag_part[0] <= 0 <= self.imag_part[1]

    def midpoint(self) -> complex:
        re = (self.real_part[0] + self.real_part[1]) / 2
        im = (self.imag_part[0] + self.imag_part[1]) / 2
        return complex(float(re), float(im))

    def exact_midpoint(self) -> tuple[Fraction, Fraction]:
        return ((self.real_part[0] + self.real_part[1]) / 2,
                (self.imag_part[0] + self.imag_part[1]) / 2)

    def width(self) -> Fraction:
        return max(self.real_part[1] - self.real_part[0], self.imag_part[1] - self.imag_part[0])

    def contains(self, re, im=0) -> bool:
        return (self.real_part[0] <= re <= self.real_part[1]
                and self.imag_part[0] <= im <= self.imag_part[1])

    def excludes_real(self, value) -> bool:
        """True when the box certainly does not contain the real number ``value``."""
        return not self.contains(Fraction(value), 0)

    def overlaps(self, other: "RootBox") -> bool:
        return (self.real_part[0] <= other.real_part[1] and other.real_part[0] <= self.real_part[1]
                and self.imag_part[0] <= other.imag_part[1] and other.imag_part[0] <= self.imag_part[1])

    def conjugate(self) -> "RootBox":
        return RootBox(self.real_part, (-self.imag_part[1], -self.imag_part[0]), self.multiplicity)

    def to_json(self) -> dict:
        return {
            "re": [dyadic_str(self.real_part[0]), dyadic_str(self.real_part[1])],
            "im": [dyadic_str(self.imag_part[0]), dyadic_str(self.imag_part[1])],
            "mult": self.multiplicity,
        }

    @classmethod
    def from_json(cls, d: dict) -> "RootBox":
        return cls(tuple(parse_dyadic(s) for s in d["re"]),
                   tuple(parse_dyadic(s) for s in d["im"]),
                   int(d["mult"]))

    def sort_key(self):
        return self.exact_midpoint()


# ---------------------------------------------------------------- integer polys

def as_fmpz_poly(p) -> flint.fmpz_poly:
    if isinstance(p, flint.fmpz_poly):
        return p
    if isinstance(p, UniPoly):
        return p.to_flint()
    return flint.fmpz_poly([int(c) for c in p])


def _primitive(q: flint.fmpz_poly) -> flint.fmpz_poly:
    c = q.content()
    if c != 1 and c != 0:
        q = flint.fmpz_poly([x // c for x in q.coeffs()])
    return q


def _sign_variations(coeffs) -> int:
    prev = 0
    v = 0
    for c in coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _descartes_bound(q: flint.fmpz_poly) -> int:
    """Sign variations of (x+1)^n q(1/(x+1)); bounds the roots of q in (0, 1)."""
    rev = flint.fmpz_poly(list(reversed(q.coeffs())))
    return _sign_variations(rev(flint.fmpz_poly([1, 1])).coeffs())


def _halve(q: flint.fmpz_poly) -> flint.fmpz_poly:
    """2^n q(x/2)."""
    n = q.degree()
    return flint.fmpz_poly([c * (1 << (n - i)) for i, c in enumerate(q.coeffs())])


def _root_bound_bits(p: flint.fmpz_poly) -> int:
    """Smallest k with every root modulus below 2^k, via Fujiwara's bound.

    Fujiwara: |z| <= 2 max_i |c_{n-i}/c_n|^(1/i); so 2^k works as soon as
    |c_{n-i}| <= |c_n| 2^((k-1) i) for every i.
    """
    cs = [abs(int(c)) for c in p.coeffs()]
    n = len(cs) - 1
    lead = cs[-1]
    k = 1
    while any(cs[n - i] > lead << ((k - 1) * i) for i in range(1, n + 1)):
        k += 1
    return k


def _isolate_unit(q: flint.fmpz_poly, lo: Fraction, w: Fraction, out: list):
    """Isolate roots of q on (0, 1), where x in (0,1) maps to lo + w x."""
    stack = [(q, lo, w)]
    while stack:
        q, lo, w = stack.pop()
        if q.degree() <= 0:
            continue
        v = _descartes_bound(q)
        if v == 0:
            continue
        if v == 1:
            out.append((lo, lo + w))
            continue
        left = _primitive(_halve(q))
        half = w / 2
        mid = lo + half
        right = _primitive(left(flint.fmpz_poly([1, 1])))
        if right[0] == 0:
            # exact root at the midpoint
            out.append((mid, mid))
            right = flint.fmpz_poly(right.coeffs()[1:])
            left = _primitive(left // flint.fmpz_poly([-1, 1]))
        stack.append((right, mid, half))
        stack.append((left, lo, half))


def real_root_intervals(p) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct real roots of a square-free polynomial.

    Intervals are open dyadic intervals containing exactly one root, or
    degenerate ``(r, r)`` when the root is an exact dyadic rational. Sorted
    increasingly and pairwise disjoint.
    """
    f = _primitive(as_fmpz_poly(p))
    if f.is_zero():
        raise InvalidInputError("zero polynomial")
    out: list[tuple[Fraction, Fraction]] = []
    if f.degree() <= 0:
        return out
    if f[0] == 0:
        out.append((Fraction(0), Fraction(0)))
        f = flint.fmpz_poly(f.coeffs()[1:])
    if f.degree() <= 0:
        return out
    k = _root_bound_bits(f)
    B = 1 << k
    cs = f.coeffs()
    pos = _primitive(flint.fmpz_poly([c * B**i for i, c in enumerate(cs)]))
    neg = _primitive(flint.fmpz_poly([c * (-B) ** i for i, c in enumerate(cs)]))
    found_pos: list = []
    _isolate_unit(pos, Fraction(0), Fraction(B), found_pos)
    found_neg: list = []
    _isolate_unit(neg, Fraction(0), Fraction(B), found_neg)
    out.extend((-hi, -lo) for lo, hi in found_neg)
    out.extend(found_pos)
    out.sort()
    return out


def _eval_sign(f: flint.fmpz_poly, x: Fraction) -> int:
    v = f(flint.fmpq(x.numerator, x.denominator))
    return (v > 0) - (v < 0)


def refine_real_root(p, lo: Fraction, hi: Fraction, width: Fraction,
                     avoid: tuple = ()) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval by exact bisection until ``hi - lo <= width``.

    ``(lo, hi)`` is open and holds exactly one simple root; its endpoints may
    be other roots, and the result never keeps such an endpoint. Points in
    ``avoid`` (non-roots) are pushed outside the interval.
    """
    f = as_fmpz_poly(p)
    if lo == hi:
        return lo, hi
    s_lo = _eval_sign(f, lo)
    if s_lo == 0:
        # sign just right of a simple root at lo
        s_lo = _eval_sign(f.derivative(), lo)
    for point in avoid:
        point = Fraction(point)
        if lo < point < hi:
            s = _eval_sign(f, point)
            if s == 0:
                return point, point
            if s == s_lo:
                lo = point
            else:
                hi = point
    while hi - lo > width or _eval_sign(f, lo) == 0 or _eval_sign(f, hi) == 0:
        mid = (lo + hi) / 2
        s = _eval_sign(f, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------- complex isolation

def _fraction_of_arf(x) -> Fraction:
    """Exact value of an exact arb (e.g. a midpoint)."""
    m, e = x.man_exp()
    m, e = int(m), int(e)
    return Fraction(m * 2**e) if e >= 0 else Fraction(m, 2**-e)


def arb_to_interval(x: "flint.arb") -> tuple[Fraction, Fraction]:
    mid = _fraction_of_arf(x.mid())
    rad = _fraction_of_arf(x.rad())
    return mid - rad, mid + rad


@dataclass
class Disc:
    """An isolating disc; ``center`` is an exact acb midpoint and ``radius`` a Fraction."""

    center: "flint.acb"
    radius: Fraction
    real: bool
    interval: tuple[Fraction, Fraction] | None = None  # exact isolating interval for real roots

    def ball(self) -> "flint.acb":
        if self.real and self.interval is not None:
            lo, hi = self.interval
            mid = (lo + hi) / 2
            rad = (hi - lo) / 2
            re = flint.arb(flint.fmpq(mid.numerator, mid.denominator),
                           flint.arb(flint.fmpq(rad.numerator, rad.denominator)).upper())
            return flint.acb(re, 0)
        r = flint.arb(flint.fmpq(self.radius.numerator, self.radius.denominator)).upper()
        return flint.acb(flint.arb(self.center.real, r), flint.arb(self.center.imag, r))

    def box(self, width: Fraction, multiplicity: int) -> RootBox:
        if self.real and self.interval is not None:
            # Descartes intervals are already dyadic
            return RootBox(self.interval, (Fraction(0), Fraction(0)), multiplicity)
        k = _grid_bits(width)
        re = _fraction_of_arf(self.center.real.mid())
        im = _fraction_of_arf(self.center.imag.mid())
        r = self.radius
        return RootBox((_floor_dyadic(re - r, k), _ceil_dyadic(re + r, k)),
                       (_floor_dyadic(im - r, k), _ceil_dyadic(im + r, k)), multiplicity)


def _initial_approximations(coeffs: list[int]) -> np.ndarray:
    n = len(coeffs) - 1
    shift = max(abs(c).bit_length() for c in coeffs)
    scaled = [float(Fraction(c, 2**shift)) if shift > 1000 else c / 2.0**shift for c in coeffs]
    with np.errstate(all="ignore"):
        r = np.roots(scaled[::-1])
    r = np.asarray(r, dtype=complex)
    if len(r) != n or not np.all(np.isfinite(r)):
        ang = np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
        r = ang * 1.0
    return r


def _aberth_sweeps(P, dP, z: list, sweeps: int, tol_bits: int) -> list:
    n = len(z)
    for _ in range(sweeps):
        biggest = None
        for i in range(n):
            zi = z[i]
            pv = P(zi)
            dv = dP(zi)
            if dv == 0:
                continue
            ratio = pv / dv
            s = flint.acb(0)
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        s += 1 / diff
            denom = 1 - ratio * s
            if denom == 0:
                continue
            w = (ratio / denom).mid()
            z[i] = (zi - w).mid()
            aw = abs(w).mid()
            biggest = aw if biggest is None or aw > biggest else biggest
        if biggest is None or biggest == 0 or biggest < flint.arb(2) ** (-tol_bits):
            break
    return z


def _symmetrize(z: list, real_count: int) -> list | None:
    """Snap approximations to a conjugation-stable configuration, or None."""
    order = sorted(range(len(z)), key=lambda i: abs(float(z[i].imag.mid())))
    real_idx = set(order[:real_count])
    reals = [flint.acb(z[i].real.mid(), 0) for i in sorted(real_idx, key=lambda i: float(z[i].real.mid()))]
    upper = [z[i] for i in range(len(z)) if i not in real_idx and float(z[i].imag.mid()) > 0]
    lower = [z[i] for i in range(len(z)) if i not in real_idx and float(z[i].imag.mid()) <= 0]
    if len(upper) != len(lower):
        return None
    upper.sort(key=lambda w: (float(w.real.mid()), float(w.imag.mid())))
    out = list(reals)
    for w in upper:
        out.append(w)
        out.append(flint.acb(w.real.mid(), -w.imag.mid()))
    return out


def _smith_discs(P, lead, z: list) -> list[Fraction] | None:
    """Smith inclusion radii; None unless all discs are pairwise disjoint."""
    n = len(z)
    dists = [[None] * n for _ in range(n)]
    radii = []
    for i in range(n):
        prod = flint.arb(1)
        for j in range(n):
            if j == i:
                continue
            if dists[i][j] is None:
                d = abs(z[i] - z[j])
                dists[i][j] = dists[j][i] = d
            prod *= dists[i][j]
        low = prod.lower()
        if not low > 0:
            return None
        num = abs(P(z[i])).upper()
        r = (n * num / (abs(lead) * low)).upper()
        if not r.is_finite():
            return None
        radii.append(_fraction_of_arf(r.mid()) + _fraction_of_arf(r.rad()))
    for i in range(n):
        for j in range(i + 1, n):
            d = _fraction_of_arf(dists[i][j].lower().mid()) - _fraction_of_arf(dists[i][j].lower().rad())
            if not d > radii[i] + radii[j]:
                return None
    return radii


def isolate_squarefree(p, width: Fraction = DEFAULT_WIDTH,
                       start_prec: int | None = None) -> list[Disc]:
    """Certified discs for every root of a square-free integer polynomial.

    Real roots come back with exact isolating intervals of length at most
    ``width``; nonreal roots as conjugation-closed discs of diameter at most
    ``width`` that avoid the real axis.
    """
    f = _primitive(as_fmpz_poly(p))
    n = f.degree()
    if n < 1:
        return []
    width = Fraction(width)
    coeffs = [int(c) for c in f.coeffs()]
    real_ivals = real_root_intervals(f)
    real_ivals = [refine_real_root(f, lo, hi, width) for lo, hi in real_ivals]
    if n == len(real_ivals):
        return [_real_disc(lo, hi) for lo, hi in real_ivals]

    need_bits = max(1, -floor(_log2(width)))
    prec = start_prec or max(64, need_bits + 32)
    approx = [complex(c) for c in _initial_approximations(coeffs)]
    z = None
    while prec <= 4 * PRECISION_CAP:
        with flint.ctx.workprec(prec):
            P = flint.acb_poly(coeffs)
            dP = P.derivative()
            if z is None:
                z = [flint.acb(w.real, w.imag) for w in approx]
            else:
                z = [flint.acb(w.real.mid(), w.imag.mid()) for w in z]
            z = _aberth_sweeps(P, dP, z, sweeps=60, tol_bits=prec - 8)
            sym = _symmetrize(z, len(real_ivals))
            if sym is not None:
                radii = _smith_discs(P, coeffs[-1], sym)
                if radii is not None and all(2 * r <= width for r in radii[len(real_ivals):]):
                    discs = []
                    for k, (lo, hi) in enumerate(real_ivals):
                        discs.append(_real_disc(lo, hi))
                    for w, r in zip(sym[len(real_ivals):], radii[len(real_ivals):]):
                        discs.append(Disc(w, r, False))
                    return discs
        prec *= 2
    raise RefinementFailure("complex root isolation did not certify within the precision cap",
                            state={"degree": n, "precision": prec})


def _real_disc(lo: Fraction, hi: Fraction) -> Disc:
    mid = (lo + hi) / 2
    return Disc(flint.acb(flint.arb(flint.fmpq(mid.numerator, mid.denominator))), (hi - lo) / 2,
                True, (lo, hi))


def _log2(q: Fraction) -> float:
    return (q.numerator.bit_length() - q.denominator.bit_length())


def _boxes_disjoint(boxes: list[RootBox]) -> bool:
    ordered = sorted(boxes, key=lambda b: b.real_part[0])
    for i, b in enumerate(ordered):
        for c in ordered[i + 1:]:
            if c.real_part[0] > b.real_part[1]:
                break
            if b.overlaps(c):
                return False
    return True


def isolate_roots(p: UniPoly, width=DEFAULT_WIDTH) -> list[RootBox]:
    """One certified box per distinct complex root, with multiplicities.

    Boxes have side at most ``width``, are pairwise disjoint, and the set is
    closed under complex conjugation. Sorted by real then imaginary midpoint.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    if p.is_zero():
        raise InvalidInputError("root isolation of the zero polynomial")
    width = Fraction(width)
    if width <= 0:
        raise InvalidInputError("width must be positive")
    parts = squarefree_decompose(p)
    w = width
    for _ in range(64):
        boxes = []
        for g, m in parts:
            for disc in isolate_squarefree(g, w / 2):
                boxes.append(disc.box(width, m))
        nonreal_ok = all(b.is_real or not b.straddles_real_axis for b in boxes)
        if nonreal_ok and _boxes_disjoint(boxes):
            return sorted(boxes, key=RootBox.sort_key)
        w /= 16
    raise RefinementFailure("could not separate root boxes", state={"width": w})
