"""Dense univariate and sparse bivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

import flint

from ..errors import InvalidInputError

Rational = Fraction

AXES = ("x1", "x2")


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (flint.fmpz, flint.fmpq)):
        return Fraction(int(c.p), int(c.q)) if isinstance(c, flint.fmpq) else Fraction(int(c))
    return Fraction(c)


class UniPoly:
    """Immutable dense polynomial, coefficients indexed by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # construction helpers
    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-_frac(r), 1])
        return out

    @classmethod
    def from_flint(cls, p) -> "UniPoly":
        return cls(p.coeffs())

    # basic queries
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                parts.append(f"+ {mono}")
            elif mono and c == -1:
                parts.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                body = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
                parts.append(f"{sign} {body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # arithmetic
    def _coerce(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = UniPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree()
        lc = other.lc()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lc
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= f * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def primitive(self) -> list[int]:
        """Integer coefficients of the primitive associate with positive leading term."""
        if self.is_zero():
            return []
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]

    def to_flint(self) -> flint.fmpz_poly:
        return flint.fmpz_poly(self.primitive())

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
            if not b.is_zero():
                b = UniPoly(b.primitive())
        return a.monic()


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    return p.gcd(q)


class BiPoly:
    """Sparse polynomial in x1, x2; terms keyed by (deg_x1, deg_x2)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise InvalidInputError("negative exponent in BiPoly")
            c = _frac(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), Fraction(0)) + c
        object.__setattr__(self, "_terms", {k: v for k, v in sorted(clean.items()) if v})

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    @classmethod
    def x1(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def x2(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self, axis: str) -> int:
        k = AXES.index(axis)
        return max((m[k] for m in self._terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == BiPoly({(0, 0): other})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"BiPoly({ {k: str(v) for k, v in self._terms.items()} })"

    def _coerce(self, other):
        return other if isinstance(other, BiPoly) else BiPoly({(0, 0): other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self._terms.items():
            for (k, l), b in other._terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly({(0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x1, x2):
        return sum((c * x1**i * x2**j for (i, j), c in self._terms.items()), 0 * x1)

    def coefficients_in(self, axis: str) -> list[UniPoly]:
        """View as a polynomial in ``axis`` with UniPoly coefficients in the other variable."""
        k = AXES.index(axis)
        deg = self.degree(axis)
        cols: list[dict[int, Fraction]] = [dict() for _ in range(deg + 1)]
        for m, c in self._terms.items():
            cols[m[k]][m[1 - k]] = c
        return [UniPoly([col.get(e, 0) for e in range(max(col, default=-1) + 1)]) for col in cols]

    def specialize(self, axis: str, value) -> UniPoly:
        """Substitute ``value`` for ``axis``; the result is univariate in the other variable."""
        cols = self.coefficients_in(axis)
        out = UniPoly()
        for e, c in enumerate(cols):
            out = out + c * (_frac(value) ** e)
        return out

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self._terms.items()})

    def integer_terms(self) -> dict[tuple[int, int], int]:
        """Terms scaled to a primitive integer polynomial (sign preserved)."""
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self._terms.values()), 1)
        ints = {k: int(c * den) for k, c in self._terms.items()}
        g = reduce(gcd, ints.values(), 0) or 1
        return {k: v // g for k, v in ints.items()}


def unipoly_from_ints(coeffs: Sequence[int]) -> UniPoly:
    return UniPoly(coeffs)
