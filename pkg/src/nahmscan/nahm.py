"""Rank-2 Nahm systems: construction, elimination, certified solving, reality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import flint

from .errors import (
    InconsistencyError,
    InvalidInputError,
    NotCertifiedError,
    RefinementFailure,
)
from .exact import BiPoly, RootBox, UniPoly
from .exact.roots import (
    DEFAULT_WIDTH,
    PRECISION_CAP,
    _grid_bits,
    _floor_dyadic,
    _ceil_dyadic,
    arb_to_interval,
    isolate_squarefree,
    real_root_intervals,
    refine_real_root,
)

CERTIFIED_REAL = "certified_real"
CERTIFIED_NONREAL = "certified_nonreal"
UNDECIDED = "undecided"

POSITIVE_B = "positive_b"
ZERO_B = "zero_b"
NEGATIVE_B = "negative_b"

MIN_WIDTH = Fraction(1, 2**PRECISION_CAP)


@dataclass(frozen=True, order=True)
class Matrix2:
    """Symmetric integer matrix [[a, b], [b, d]]."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.d):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInputError("matrix entries must be integers")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.b

    @property
    def c(self) -> int:
        return -self.b

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.d > 0 and self.det > 0

    def require_positive_definite(self) -> "Matrix2":
        if not self.is_positive_definite():
            raise InvalidInputError(f"matrix {self.rows()} is not positive definite")
        return self

    def transpose(self) -> "Matrix2":
        """Swap the roles of the two variables (a <-> d)."""
        return Matrix2(self.d, self.b, self.a)

    def normalized(self) -> tuple["Matrix2", bool]:
        """Orientation with a >= d, and whether a swap happened."""
        if self.a >= self.d:
            return self, False
        return self.transpose(), True

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.b, self.d]]

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "d": self.d}

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.b},{self.d}]]"


@dataclass(frozen=True)
class NahmSystem:
    matrix: Matrix2
    p1: BiPoly
    p2: BiPoly
    form: str
    excluded_origin_multiplicity: int = 0


@dataclass(frozen=True)
class Solution:
    x1: RootBox
    x2: RootBox
    multiplicity: int
    reality: str

    def in_unit_square(self) -> bool:
        """Both coordinates certified inside the open interval (0, 1)."""
        return all(b.is_real and 0 < b.real_part[0] and b.real_part[1] < 1 for b in (self.x1, self.x2))

    def to_json(self) -> dict:
        return {"x1": self.x1.to_json(), "x2": self.x2.to_json(),
                "mult": self.multiplicity, "reality": self.reality}


@dataclass
class SolutionSet:
    matrix: Matrix2
    solutions: list[Solution]
    total_multiplicity: int
    excluded_origin_multiplicity: int = 0
    projection: str = "x1"

    def unit_square_multiplicities(self) -> list[int]:
        return [s.multiplicity for s in self.solutions if s.in_unit_square()]

    def real_multiplicity(self) -> int:
        return sum(s.multiplicity for s in self.solutions if s.reality == CERTIFIED_REAL)

    def nonreal_multiplicity(self) -> int:
        return sum(s.multiplicity for s in self.solutions if s.reality == CERTIFIED_NONREAL)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(),
                "solutions": [s.to_json() for s in self.solutions],
                "total_mult": self.total_multiplicity}


@dataclass
class Census:
    """Exact counts without boxing every nonreal solution.

    Real solutions are isolated and certified individually; the nonreal
    multiplicity is the remainder of the exact eliminant degree.
    """

    matrix: Matrix2
    total_multiplicity: int
    real_solutions: list[Solution]
    nonreal_multiplicity: int
    excluded_origin_multiplicity: int = 0
    projection: str = "x1"

    def unit_square_multiplicities(self) -> list[int]:
        return [s.multiplicity for s in self.real_solutions if s.in_unit_square()]

    def real_multiplicity(self) -> int:
        return sum(s.multiplicity for s in self.real_solutions)


@dataclass(frozen=True)
class RealityReport:
    matrix: Matrix2
    real_count: int
    nonreal_count: int
    all_real: bool

    @property
    def total(self) -> int:
        return self.real_count + self.nonreal_count

    def to_json(self) -> dict:
        return {"real_mult": self.real_count, "nonreal_mult": self.nonreal_count,
                "all_real": self.all_real}


# ---------------------------------------------------------------- systems

def build_system(A: Matrix2) -> NahmSystem:
    """Cleared-denominator polynomial pair for the matrix."""
    A.require_positive_definite()
    x1, x2 = BiPoly.x1(), BiPoly.x2()
    a, b, d = A.a, A.b, A.d
    if b > 0:
        p1 = x1**a * x2**b + x1 - 1
        p2 = x1**b * x2**d + x2 - 1
        return NahmSystem(A, p1, p2, POSITIVE_B, 0)
    if b == 0:
        p1 = x1**a + x1 - 1
        p2 = x2**d + x2 - 1
        return NahmSystem(A, p1, p2, ZERO_B, 0)
    c = -b
    p1 = x1**a - x2**c * (1 - x1)
    p2 = x2**d - x1**c * (1 - x2)
    return NahmSystem(A, p1, p2, NEGATIVE_B, c * c)


_MPOLY_CTX = flint.fmpz_mpoly_ctx.get(("x", "y"), "lex")


def _to_mpoly(p: BiPoly):
    return _MPOLY_CTX.from_dict({k: v for k, v in p.integer_terms().items()})


@lru_cache(maxsize=256)
def eliminant(A: Matrix2) -> tuple[flint.fmpz_poly, int]:
    """x1-eliminant with the power of x1 stripped, and the stripped order.

    The x1 = 0 fibre carries no affine solution for b > 0 (both leading
    coefficients vanish there only) and only the origin for b < 0, so the
    degree of the returned polynomial is the affine solution count with
    multiplicity.
    """
    system = build_system(A)
    if system.form == ZERO_B:
        raise InvalidInputError("zero_b systems decouple; no elimination needed")
    r = _to_mpoly(system.p1).resultant(_to_mpoly(system.p2), "y")
    terms = r.to_dict()
    if not terms:
        raise InconsistencyError("identically zero eliminant: the curves share a component")
    deg = max(k[0] for k in terms)
    coeffs = [0] * (deg + 1)
    for k, v in terms.items():
        coeffs[k[0]] = int(v)
    order = next(i for i, c in enumerate(coeffs) if c)
    E = flint.fmpz_poly(coeffs[order:])
    content = E.content()
    if E.leading_coefficient() < 0:
        content = -content
    E = flint.fmpz_poly([c // content for c in E.coeffs()])
    return E, order


def _squarefree_parts(E: flint.fmpz_poly) -> list[tuple[flint.fmpz_poly, int]]:
    _, parts = E.factor_squarefree()
    return sorted(((g, int(m)) for g, m in parts), key=lambda t: t[1])


# ---------------------------------------------------------------- partners

def _fmpq(q: Fraction):
    return flint.fmpq(q.numerator, q.denominator)


def _ball_from_interval(lo: Fraction, hi: Fraction) -> "flint.arb":
    mid = (lo + hi) / 2
    rad = (hi - lo) / 2
    return flint.arb(_fmpq(mid), flint.arb(_fmpq(rad)).upper() if rad else 0)


def _fibre_data(system: NahmSystem):
    """p1 = alpha(x) y^k - beta(x) with beta/alpha the value of y^k on the fibre."""
    A = system.matrix
    if system.form == POSITIVE_B:
        k = A.b

        def w(x):
            return (1 - x) / x**A.a

        def G(x, y):
            return x**A.b * y**A.d + y - 1
    else:
        k = A.c

        def w(x):
            return x**A.a / (1 - x)

        def G(x, y):
            return y**A.d - x**A.c * (1 - y)
    return k, w, G


def _unit_roots(k: int, shift_half: bool):
    """(numerator, k) pairs t with exp(i pi t / k) the k candidate phases."""
    if shift_half:
        return [flint.fmpq(2 * j + 1, k) for j in range(k)]
    return [flint.fmpq(2 * j, k) for j in range(k)]


def _candidates(system: NahmSystem, xi, real: bool):
    """Every y with alpha(xi) y^k = beta(xi), as (ball, exactly_real) pairs."""
    k, w, _ = _fibre_data(system)
    if real:
        wv = w(xi.real if isinstance(xi, flint.acb) else xi)
        if wv > 0:
            rho = wv.root(k) if k > 1 else wv
            shift = False
        elif wv < 0:
            rho = (-wv).root(k) if k > 1 else -wv
            shift = True
        else:
            return None
        out = []
        for t in _unit_roots(k, shift):
            if t == 0:
                out.append((flint.acb(rho), True))
            elif t == 1:
                out.append((flint.acb(-rho), True))
            else:
                s, c = flint.arb.sin_cos_pi_fmpq(t)
                out.append((flint.acb(rho * c, rho * s), False))
        return out
    wv = w(xi)
    shift = wv.real.mid() < 0
    base = -wv if shift else wv
    if base.real.contains(0) and base.imag.contains(0):
        return None
    rho = (base.log() / k).exp() if k > 1 else base
    out = []
    for t in _unit_roots(k, shift):
        s, c = flint.arb.sin_cos_pi_fmpq(t)
        out.append((rho * flint.acb(c, s), False))
    return out


def _surviving_partners(system: NahmSystem, xi, real: bool):
    """Candidates whose residual ball in the second equation still contains 0.

    Returns None when the fibre itself is not yet resolved at this precision.
    """
    _, _, G = _fibre_data(system)
    cands = _candidates(system, xi, real)
    if cands is None:
        return None
    out = []
    for y, exactly_real in cands:
        g = G(flint.acb(xi) if not isinstance(xi, flint.acb) else xi, y)
        if g.real.contains(0) and g.imag.contains(0):
            out.append((y, exactly_real))
    return out


def _prec_for(width: Fraction) -> int:
    bits = width.denominator.bit_length() - width.numerator.bit_length()
    return max(64, bits + 64)


def _interval_box(lo: Fraction, hi: Fraction, width: Fraction, mult: int, real: bool = True) -> RootBox:
    k = _grid_bits(width)
    return RootBox((_floor_dyadic(lo, k), _ceil_dyadic(hi, k)), (Fraction(0), Fraction(0)), mult)


def _acb_box(z, width: Fraction, mult: int, exactly_real: bool) -> RootBox:
    k = _grid_bits(width)
    re_lo, re_hi = arb_to_interval(z.real)
    box_re = (_floor_dyadic(re_lo, k), _ceil_dyadic(re_hi, k))
    if exactly_real:
        return RootBox(box_re, (Fraction(0), Fraction(0)), mult)
    im_lo, im_hi = arb_to_interval(z.imag)
    return RootBox(box_re, (_floor_dyadic(im_lo, k), _ceil_dyadic(im_hi, k)), mult)


class _Ambiguous(Exception):
    pass


def _resolve_real_root(system: NahmSystem, g, lo: Fraction, hi: Fraction, m: int,
                       width: Fraction, avoid=(Fraction(0), Fraction(1))):
    """Certify what lies above one real root of the eliminant.

    Returns a list of Solution objects: one real solution, or a conjugate
    pair of nonreal solutions. Raises _Ambiguous when the fibre has more
    structure than this projection can separate.
    """
    w = width
    lo, hi = refine_real_root(g, lo, hi, w, avoid=avoid)
    while True:
        prec = _prec_for(min(w, hi - lo) if hi > lo else w)
        with flint.ctx.workprec(prec):
            xi = _ball_from_interval(lo, hi)
            surv = _surviving_partners(system, xi, real=True)
            if surv is not None and surv:
                reals = [y for y, r in surv if r]
                nonreals = [y for y, r in surv if not r]
                if len(surv) == 1 and reals:
                    y = reals[0]
                    ybox = _acb_box(y, width, m, True)
                    if ybox.width() <= width and ybox.excludes_real(0) and ybox.excludes_real(1):
                        xbox = RootBox((lo, hi), (Fraction(0), Fraction(0)), m)
                        return [Solution(xbox, ybox, m, CERTIFIED_REAL)]
                elif not reals and len(nonreals) == 2 and m % 2 == 0:
                    ys = sorted(nonreals, key=lambda y: float(y.imag.mid()), reverse=True)
                    ybox = _acb_box(ys[0], width, m // 2, False)
                    if ybox.width() <= width and not ybox.straddles_real_axis:
                        xbox = RootBox((lo, hi), (Fraction(0), Fraction(0)), m // 2)
                        return [Solution(xbox, ybox, m // 2, CERTIFIED_NONREAL),
                                Solution(xbox, ybox.conjugate(), m // 2, CERTIFIED_NONREAL)]
        if w < MIN_WIDTH:
            raise _Ambiguous()
        w = w / 2**32
        lo, hi = refine_real_root(g, lo, hi, w)


def _census_real_root(system, g, lo, hi, m, width):
    """Like _resolve_real_root, but only needs the real/nonreal verdict."""
    w = width
    lo, hi = refine_real_root(g, lo, hi, w, avoid=(Fraction(0), Fraction(1)))
    while True:
        prec = _prec_for(min(w, hi - lo) if hi > lo else w)
        with flint.ctx.workprec(prec):
            xi = _ball_from_interval(lo, hi)
            surv = _surviving_partners(system, xi, real=True)
            if surv:
                reals = [y for y, r in surv if r]
                if len(surv) == 1 and reals:
                    ybox = _acb_box(reals[0], width, m, True)
                    if ybox.excludes_real(0) and ybox.excludes_real(1):
                        xbox = RootBox((lo, hi), (Fraction(0), Fraction(0)), m)
                        return Solution(xbox, ybox, m, CERTIFIED_REAL)
                elif not reals:
                    return None
        if w < MIN_WIDTH:
            raise _Ambiguous()
        w = w / 2**32
        lo, hi = refine_real_root(g, lo, hi, w)


def _resolve_complex_factor(system: NahmSystem, g, m: int, width: Fraction) -> list[Solution]:
    w = width
    while True:
        discs = isolate_squarefree(g, w)
        out: list[Solution] = []
        ok = True
        for disc in discs:
            if disc.real:
                lo, hi = disc.interval
                out.extend(_resolve_real_root(system, g, lo, hi, m, width))
                continue
            if float(disc.center.imag.mid()) < 0:
                continue
            with flint.ctx.workprec(_prec_for(w)):
                surv = _surviving_partners(system, disc.ball(), real=False)
                if not surv or len(surv) != 1:
                    ok = False
                    break
                y = surv[0][0]
                xbox = disc.box(width, m)
                ybox = _acb_box(y, width, m, False)
                if xbox.width() > width or ybox.width() > width:
                    ok = False
                    break
                out.append(Solution(xbox, ybox, m, CERTIFIED_NONREAL))
                out.append(Solution(xbox.conjugate(), ybox.conjugate(), m, CERTIFIED_NONREAL))
        if ok:
            return out
        if w < MIN_WIDTH:
            raise _Ambiguous()
        w = w / 2**16


def _swap_solution(s: Solution) -> Solution:
    return Solution(s.x2, s.x1, s.multiplicity, s.reality)


def _sort_solutions(sols: list[Solution]) -> list[Solution]:
    return sorted(sols, key=lambda s: (s.x1.sort_key(), s.x2.sort_key()))


def _solve_projected(A: Matrix2, width: Fraction) -> tuple[list[Solution], int, int]:
    system = build_system(A)
    E, order = eliminant(A)
    sols: list[Solution] = []
    for g, m in _squarefree_parts(E):
        sols.extend(_resolve_complex_factor(system, g, m, width))
    return sols, E.degree(), order


def _solve_decoupled(A: Matrix2, width: Fraction) -> SolutionSet:
    x = UniPoly.x()
    p1 = x**A.a + x - 1
    p2 = x**A.d + x - 1
    from .exact import isolate_roots

    r1 = isolate_roots(p1, width)
    r2 = isolate_roots(p2, width)
    sols = []
    for u in r1:
        for v in r2:
            real = u.is_real and v.is_real
            m = u.multiplicity * v.multiplicity
            sols.append(Solution(u, v, m, CERTIFIED_REAL if real else CERTIFIED_NONREAL))
    return SolutionSet(A, _sort_solutions(sols), sum(s.multiplicity for s in sols), 0, "decoupled")


def solve(A: Matrix2, width=DEFAULT_WIDTH) -> SolutionSet:
    """All affine solutions with multiplicities, each certified real or nonreal.

    For b < 0 the origin (multiplicity c^2 in the cleared system) is removed.
    """
    A.require_positive_definite()
    width = Fraction(width)
    if width <= 0:
        raise InvalidInputError("width must be positive")
    if A.b == 0:
        return _solve_decoupled(A, width)
    expected_origin = A.c**2 if A.b < 0 else 0
    for projection, M in (("x1", A), ("x2", A.transpose())):
        try:
            sols, total, order = _solve_projected(M, width)
        except _Ambiguous:
            continue
        if A.b < 0 and order != expected_origin:
            raise InconsistencyError(f"origin multiplicity {order} != c^2 = {expected_origin}")
        if projection == "x2":
            sols = [_swap_solution(s) for s in sols]
        if sum(s.multiplicity for s in sols) != total:
            raise InconsistencyError("multiplicity bookkeeping does not match the eliminant degree")
        return SolutionSet(A, _sort_solutions(sols), total, expected_origin, projection)
    raise RefinementFailure(f"no coordinate projection separates the solutions of {A}",
                            state={"matrix": A.to_json()})


def census(A: Matrix2, width=DEFAULT_WIDTH) -> Census:
    """Exact total and real multiplicities; real solutions certified individually."""
    A.require_positive_definite()
    width = Fraction(width)
    if A.b == 0:
        x = UniPoly.x()
        reals = []
        for e in (A.a, A.d):
            g = (x**e + x - 1).to_flint()
            reals.append([refine_real_root(g, lo, hi, width, avoid=(Fraction(0), Fraction(1)))
                          for lo, hi in real_root_intervals(g)])
        sols = []
        for lo1, hi1 in reals[0]:
            for lo2, hi2 in reals[1]:
                sols.append(Solution(RootBox((lo1, hi1), (Fraction(0), Fraction(0)), 1),
                                     RootBox((lo2, hi2), (Fraction(0), Fraction(0)), 1),
                                     1, CERTIFIED_REAL))
        total = A.a * A.d
        return Census(A, total, _sort_solutions(sols), total - len(sols), 0, "decoupled")
    expected_origin = A.c**2 if A.b < 0 else 0
    for projection, M in (("x1", A), ("x2", A.transpose())):
        system = build_system(M)
        E, order = eliminant(M)
        try:
            reals: list[Solution] = []
            nonreal = 0
            for g, m in _squarefree_parts(E):
                ivals = real_root_intervals(g)
                for lo, hi in ivals:
                    s = _census_real_root(system, g, lo, hi, m, width)
                    if s is None:
                        nonreal += m
                    else:
                        reals.append(s)
                nonreal += (g.degree() - len(ivals)) * m
        except _Ambiguous:
            continue
        if A.b < 0 and order != expected_origin:
            raise InconsistencyError(f"origin multiplicity {order} != c^2 = {expected_origin}")
        if projection == "x2":
            reals = [_swap_solution(s) for s in reals]
        return Census(A, E.degree(), _sort_solutions(reals), nonreal, expected_origin, projection)
    raise RefinementFailure(f"no coordinate projection separates the real solutions of {A}",
                            state={"matrix": A.to_json()})


def recover_partner(system: NahmSystem, x1_box: RootBox, width=DEFAULT_WIDTH) -> list[RootBox]:
    """x2 values completing the eliminant root inside ``x1_box`` to solutions."""
    width = Fraction(width)
    A = system.matrix
    if system.form == ZERO_B:
        x = UniPoly.x()
        from .exact import isolate_roots

        return isolate_roots(x**A.d + x - 1, width)
    E, _ = eliminant(A)
    for g, m in _squarefree_parts(E):
        if x1_box.is_real:
            box_lo, box_hi = x1_box.real_part
            for lo, hi in real_root_intervals(g):
                if hi < box_lo or lo > box_hi:
                    continue
                lo, hi = refine_real_root(g, lo, hi, max(x1_box.width(), MIN_WIDTH) / 4)
                if hi < box_lo or lo > box_hi:
                    continue
                try:
                    sols = _resolve_real_root(system, g, lo, hi, m, width)
                except _Ambiguous:
                    raise RefinementFailure("partner not separated in this projection") from None
                return [s.x2 for s in sols]
        else:
            w = min(width, x1_box.width())
            try:
                sols = _resolve_complex_factor(system, g, m, w)
            except _Ambiguous:
                raise RefinementFailure("partner not separated in this projection") from None
            hits = [s.x2 for s in sols if s.x1.overlaps(x1_box)]
            if hits:
                return hits
    raise InvalidInputError("x1_box does not contain a root of the eliminant")


def classify_reality(s) -> RealityReport:
    """Real and nonreal multiplicity totals of a SolutionSet or Census."""
    if isinstance(s, Census):
        real = s.real_multiplicity()
        nonreal = s.nonreal_multiplicity
    else:
        if any(sol.reality == UNDECIDED for sol in s.solutions):
            raise NotCertifiedError("solution set still contains undecided solutions")
        real = s.real_multiplicity()
        nonreal = s.nonreal_multiplicity()
    if real + nonreal != s.total_multiplicity:
        raise InconsistencyError("real + nonreal multiplicities differ from the total")
    return RealityReport(s.matrix, real, nonreal, nonreal == 0)


# ---------------------------------------------------------------- unit square

def _x2_of(A: Matrix2, t):
    """x2 determined by the first equation on the open unit square."""
    if A.b > 0:
        return ((1 - t) / t**A.a).root(A.b) if A.b > 1 else (1 - t) / t**A.a
    c = A.c
    return (t**A.a / (1 - t)).root(c) if c > 1 else t**A.a / (1 - t)


def _h(A: Matrix2, t):
    y = _x2_of(A, t)
    if A.b >= 0:
        return y + t**A.b * y**A.d - 1
    return y + y**A.d / t**A.c - 1


def _bisect_unit(A: Matrix2, bits: int, f=None, s_lo: int = -1) -> tuple[Fraction, Fraction]:
    """Bracket the unique zero in (0, 1) of a strictly monotone function by bisection.

    ``s_lo`` is the sign of the function just right of 0.
    """
    if f is None:
        f = lambda t: _h(A, t)  # noqa: E731
        s_lo = 1 if A.b > 0 else -1
    lo, hi = Fraction(0), Fraction(1)
    target = Fraction(1, 2**bits)
    while hi - lo > target:
        mid = (lo + hi) / 2
        sign = None
        prec = max(64, bits + 32)
        for probe in (mid, mid - (hi - lo) / 8, mid + (hi - lo) / 8):
            prec_try = prec
            while prec_try <= 4 * PRECISION_CAP:
                with flint.ctx.workprec(prec_try):
                    v = f(flint.arb(_fmpq(probe)))
                if v > 0:
                    sign = 1
                    break
                if v < 0:
                    sign = -1
                    break
                prec_try *= 2
            if sign is not None:
                mid = probe
                break
        if sign is None:
            raise RefinementFailure("bisection could not certify a sign", state={"interval": (lo, hi)})
        if sign == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def unit_square_interval(A: Matrix2, bits: int = 64):
    """Certified brackets of both coordinates of the solution in (0, 1)^2."""
    A.require_positive_definite()
    if A.b == 0:
        def rank1(e):
            return lambda t: t**e + t - 1
        return _bisect_unit(A, bits, rank1(A.a), -1), _bisect_unit(A, bits, rank1(A.d), -1)
    lo, hi = _bisect_unit(A, bits)
    with flint.ctx.workprec(bits + 64):
        y = _x2_of(A, _ball_from_interval(lo, hi))
    return (lo, hi), arb_to_interval(y)


def unit_square_solution(A: Matrix2, width=DEFAULT_WIDTH) -> Solution:
    """The unique solution in (0, 1)^2, cross-checked against the exact census."""
    width = Fraction(width)
    bits = max(8, width.denominator.bit_length() - width.numerator.bit_length() + 2)
    (lo1, hi1), (lo2, hi2) = unit_square_interval(A, bits)
    cen = census(A, width)
    inside = [s for s in cen.real_solutions if s.in_unit_square()]
    if len(inside) != 1 or inside[0].multiplicity != 1:
        raise InconsistencyError(f"{A}: {len(inside)} certified solutions in the unit square")
    s = inside[0]
    if not (s.x1.real_part[0] <= hi1 and lo1 <= s.x1.real_part[1]):
        raise InconsistencyError(f"{A}: bisection and census disagree on the unit-square solution")
    if not (s.x2.real_part[0] <= hi2 and lo2 <= s.x2.real_part[1]):
        raise InconsistencyError(f"{A}: bisection and census disagree on x2")
    k = _grid_bits(width)
    x2box = RootBox((_floor_dyadic(lo2, k), _ceil_dyadic(hi2, k)), (Fraction(0), Fraction(0)), 1)
    if x2box.width() > width:
        x2box = s.x2
    return Solution(RootBox((lo1, hi1), (Fraction(0), Fraction(0)), 1), x2box, 1, CERTIFIED_REAL)
