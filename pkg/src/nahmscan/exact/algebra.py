"""Resultants, Sturm sequences and square-free decomposition over Q."""

from __future__ import annotations

from fractions import Fraction

from ..errors import EndpointRootError, InvalidInputError, NotSquareFreeError
from .poly import AXES, BiPoly, UniPoly


def _lc(p: list[UniPoly]) -> UniPoly:
    return p[-1]


def _trim(p: list[UniPoly]) -> list[UniPoly]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _prem(a: list[UniPoly], b: list[UniPoly]) -> list[UniPoly]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, coefficients in Q[x]."""
    r = list(a)
    db = len(b) - 1
    lcb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lcr = r[-1]
        shift = dr - db
        r = [c * lcb for c in r]
        for j, bj in enumerate(b):
            r[shift + j] = r[shift + j] - lcr * bj
        r.pop()
        _trim(r)
        e -= 1
    if e > 0:
        f = lcb**e
        r = [c * f for c in r]
    return r


def resultant(p: BiPoly, q: BiPoly, eliminated_variable: str = "x2") -> UniPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``eliminated_variable``.

    Computed through the subresultant pseudo-remainder sequence, so the
    intermediate coefficients in the kept variable stay polynomial in size.
    The sign agrees with the Sylvester determinant Res(p, q).
    """
    if eliminated_variable not in AXES:
        raise InvalidInputError(f"unknown axis {eliminated_variable!r}")
    if p.is_zero() or q.is_zero():
        raise InvalidInputError("resultant of a zero polynomial")
    A = _trim(p.coefficients_in(eliminated_variable))
    B = _trim(q.coefficients_in(eliminated_variable))
    if len(A) < 2 or len(B) < 2:
        raise InvalidInputError("both polynomials need positive degree in the eliminated variable")

    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
    g = UniPoly([1])
    h = UniPoly([1])
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return UniPoly()
        div = g * h**delta
        A, B = B, [c.exact_div(div) for c in R]
        g = _lc(A)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).exact_div(h ** (delta - 1))
        if len(B) - 1 <= 0:
            break
    dA = len(A) - 1
    lcB = B[0]
    if dA == 1:
        h = lcB
    else:
        h = (lcB**dA).exact_div(h ** (dA - 1))
    return h * s


def sylvester_resultant(p: BiPoly, q: BiPoly, eliminated_variable: str = "x2") -> UniPoly:
    """Determinant of the Sylvester matrix by fraction-free elimination (reference route)."""
    A = _trim(p.coefficients_in(eliminated_variable))
    B = _trim(q.coefficients_in(eliminated_variable))
    m, n = len(A) - 1, len(B) - 1
    if m < 1 or n < 1:
        raise InvalidInputError("both polynomials need positive degree in the eliminated variable")
    size = m + n
    zero = UniPoly()
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(A)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(B)):
            row[i + k] = c
        rows.append(row)
    # Bareiss over Q[x]
    sign = 1
    prev = UniPoly([1])
    M = rows
    for k in range(size - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, size):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return UniPoly()
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    return M[size - 1][size - 1] * sign


def squarefree_decompose(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm.

    Returns monic, pairwise coprime, square-free ``(g, m)`` with strictly
    increasing ``m`` such that ``p == p.lc() * prod(g**m)``.
    """
    if p.is_zero():
        raise InvalidInputError("square-free decomposition of the zero polynomial")
    if p.degree() == 0:
        return []
    dp = p.derivative()
    a = p.gcd(dp)
    b = p.exact_div(a).monic()
    c = dp.exact_div(a) * (1 / p.exact_div(a).lc())
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree() > 0:
        a = b.gcd(d)
        b_next = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b_next.derivative()
        if a.degree() > 0:
            out.append((a.monic(), i))
        b = b_next
        i += 1
    return out


def is_squarefree(p: UniPoly) -> bool:
    return p.gcd(p.derivative()).degree() == 0


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        # positive rescaling keeps every sign intact
        prim = r.primitive()
        scale = abs(Fraction(prim[-1]) / r.lc())
        seq.append(r * scale)
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(p: UniPoly, lo, hi) -> int:
    """Number of distinct real roots of the square-free ``p`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        raise InvalidInputError("zero polynomial")
    if not lo < hi:
        raise InvalidInputError("need lo < hi")
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointRootError("interval endpoint is a root; perturb the endpoints")
    if not is_squarefree(p):
        raise NotSquareFreeError("sturm_count needs square-free input; use squarefree_decompose")
    seq = sturm_sequence(p)
    return _sign_changes([s(lo) for s in seq]) - _sign_changes([s(hi) for s in seq])
