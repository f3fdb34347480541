from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from nahmscan.errors import InvalidInputError, NotCertifiedError
from nahmscan.exact import BiPoly, RootBox, UniPoly, resultant
from nahmscan.exact.roots import DEFAULT_WIDTH
from nahmscan.nahm import (
    CERTIFIED_NONREAL,
    CERTIFIED_REAL,
    NEGATIVE_B,
    POSITIVE_B,
    UNDECIDED,
    ZERO_B,
    Matrix2,
    Solution,
    SolutionSet,
    build_system,
    census,
    classify_reality,
    eliminant,
    recover_partner,
    solve,
    unit_square_interval,
    unit_square_solution,
)

x1, x2 = BiPoly.x1(), BiPoly.x2()
SQRT2 = sympy.sqrt(2)


def encloses(box: RootBox, value) -> bool:
    """Exact-ish containment test against a sympy algebraic number."""
    re, im = sympy.re(value), sympy.im(value)
    ok_re = box.real_part[0] <= re <= box.real_part[1] if box.real_part[0] != box.real_part[1] \
        else sympy.nsimplify(re - box.real_part[0]) == 0
    ok_im = box.imag_part[0] <= im <= box.imag_part[1] if box.imag_part[0] != box.imag_part[1] \
        else sympy.simplify(im - box.imag_part[0]) == 0
    return bool(ok_re and ok_im)


@st.composite
def pd_matrices(draw, bound=6):
    a = draw(st.integers(1, bound))
    d = draw(st.integers(1, bound))
    lim = int((a * d - 1) ** 0.5)
    b = draw(st.integers(-lim, lim))
    if a * d - b * b <= 0:
        b = 0
    return Matrix2(a, b, d)


# ------------------------------------------------------------ matrices and systems

def test_matrix_basics():
    A = Matrix2(4, 2, 2)
    assert A.det == 4 and A.is_positive_definite()
    assert A.transpose() == Matrix2(2, 2, 4)
    assert Matrix2(2, 2, 4).normalized() == (A, True)
    assert Matrix2(2, -3, 4).c == 3
    with pytest.raises(InvalidInputError):
        Matrix2(1, 2, 1).require_positive_definite()
    with pytest.raises(InvalidInputError):
        Matrix2(1.0, 0, 1)


def test_build_system_examples():
    s = build_system(Matrix2(2, 1, 1))
    assert s.form == POSITIVE_B
    assert s.p1 == x1**2 * x2 + x1 - 1 and s.p2 == x1 * x2 + x2 - 1
    s = build_system(Matrix2(1, 0, 1))
    assert s.form == ZERO_B and s.p1 == 2 * x1 - 1 and s.p2 == 2 * x2 - 1
    s = build_system(Matrix2(2, -1, 2))
    assert s.form == NEGATIVE_B and s.excluded_origin_multiplicity == 1
    assert s.p1 == x1**2 - x2 * (1 - x1) and s.p2 == x2**2 - x1 * (1 - x2)
    with pytest.raises(InvalidInputError):
        build_system(Matrix2(1, 1, 1))


@pytest.mark.parametrize("A", [Matrix2(2, 1, 1), Matrix2(1, 1, 2), Matrix2(3, 2, 2), Matrix2(2, -1, 3),
                               Matrix2(3, -2, 2), Matrix2(4, 1, 2)])
def test_eliminant_matches_pure_python_resultant(A):
    """flint route against the subresultant route, origin factor stripped on both."""
    E, order = eliminant(A)
    s = build_system(A)
    r = resultant(s.p1, s.p2)
    k = next(i for i, c in enumerate(r.coeffs) if c != 0)
    stripped = UniPoly(r.coeffs[k:])
    assert k == order
    assert UniPoly(stripped.primitive()) == UniPoly([int(c) for c in E.coeffs()])
    if A.b < 0:
        assert order == A.c**2


# ------------------------------------------------------------ solve

def test_solve_2_1_1():
    s = solve(Matrix2(2, 1, 1))
    assert s.total_multiplicity == 2 and len(s.solutions) == 2
    for sol, r in zip(s.solutions, [-1 / SQRT2, 1 / SQRT2]):
        assert sol.multiplicity == 1 and sol.reality == CERTIFIED_REAL
        assert encloses(sol.x1, r) and encloses(sol.x2, 1 / (1 + r))
        assert sol.x1.width() <= DEFAULT_WIDTH and sol.x2.width() <= DEFAULT_WIDTH


def test_solve_identity():
    s = solve(Matrix2(1, 0, 1))
    assert s.total_multiplicity == 1
    (sol,) = s.solutions
    assert sol.x1.contains(Fraction(1, 2)) and sol.x2.contains(Fraction(1, 2))
    assert sol.reality == CERTIFIED_REAL


def test_solve_1_1_2():
    s = solve(Matrix2(1, 1, 2))
    assert [sol.reality for sol in s.solutions] == [CERTIFIED_REAL] * 2
    for sol, r in zip(s.solutions, [2 - SQRT2, 2 + SQRT2]):
        assert encloses(sol.x1, r)


def test_solve_remark_counterexample():
    s = solve(Matrix2(4, 1, 1))
    assert any(sol.reality == CERTIFIED_NONREAL for sol in s.solutions)
    assert not classify_reality(s).all_real


def test_solve_json_shape():
    js = solve(Matrix2(2, 1, 1)).to_json()
    assert list(js) == ["matrix", "solutions", "total_mult"]
    assert list(js["solutions"][0]) == ["x1", "x2", "mult", "reality"]
    assert js["solutions"][0]["x1"]["re"][0].count("/2^") == 1


@pytest.mark.parametrize("A", [Matrix2(3, 1, 1), Matrix2(2, -1, 2), Matrix2(5, 2, 3), Matrix2(3, -1, 2),
                               Matrix2(2, 0, 3), Matrix2(6, 3, 2)])
def test_solutions_satisfy_the_system(A):
    """Residuals at the box midpoints, and the distinct-root count of sympy's own eliminant."""
    s = solve(A, Fraction(1, 2**40))
    sysm = build_system(A)
    X, Y = sympy.symbols("X Y")
    P = [sum(int(c) * X**i * Y**j for (i, j), c in p.terms.items()) for p in (sysm.p1, sysm.p2)]
    for sol in s.solutions:
        mx, my = sol.x1.midpoint(), sol.x2.midpoint()
        for p in P:
            v = complex(p.subs({X: mx, Y: my}).evalf(30))
            assert abs(v) < 1e-6
        assert not sol.x1.contains(0) and not sol.x2.contains(0)
    if A.b != 0 and s.projection == "x1":
        E = sympy.Poly(sympy.resultant(P[0], P[1], Y), X)
        E = sympy.Poly(sympy.cancel(E.as_expr() / X ** min(m[0] for m in E.monoms())), X)
        assert len(s.solutions) == sympy.degree(sympy.sqf_part(E), X)
        assert s.total_multiplicity == E.degree()


@given(pd_matrices(5))
def test_solve_invariants(A):
    s = solve(A)
    assert s.total_multiplicity == sum(x.multiplicity for x in s.solutions)
    assert all(x.reality != UNDECIDED for x in s.solutions)
    nonreal = [x for x in s.solutions if x.reality == CERTIFIED_NONREAL]
    for x in nonreal:
        mirror = [y for y in nonreal if y.x1 == x.x1.conjugate() and y.x2 == x.x2.conjugate()]
        assert mirror and mirror[0].multiplicity == x.multiplicity
    assert s.unit_square_multiplicities() == [1]
    # census agrees with the full solve
    c = census(A)
    assert c.total_multiplicity == s.total_multiplicity
    assert c.real_multiplicity() == s.real_multiplicity()
    assert solve(A).to_json() == s.to_json()


@given(pd_matrices(6))
def test_transpose_symmetry(A):
    c, ct = census(A), census(A.transpose())
    assert c.total_multiplicity == ct.total_multiplicity
    assert c.real_multiplicity() == ct.real_multiplicity()


def test_solve_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        solve(Matrix2(1, 1, 1))
    with pytest.raises(InvalidInputError):
        solve(Matrix2(1, 0, 1), 0)


# ------------------------------------------------------------ partners and reality

def test_recover_partner_examples():
    A = Matrix2(2, 1, 1)
    sol = [s for s in solve(A).solutions if s.x1.real_part[0] > 0][0]
    (box,) = recover_partner(build_system(A), sol.x1)
    assert encloses(box, 1 / (1 + 1 / SQRT2))
    half = RootBox((Fraction(1, 2), Fraction(1, 2)), (Fraction(0), Fraction(0)))
    (box,) = recover_partner(build_system(Matrix2(1, 0, 1)), half)
    assert box.contains(Fraction(1, 2))
    A = Matrix2(2, -1, 2)
    for sol in solve(A).solutions:
        boxes = recover_partner(build_system(A), sol.x1)
        assert boxes and all(b.is_real for b in boxes)


def test_classify_reality_examples():
    r = classify_reality(solve(Matrix2(2, 1, 1)))
    assert (r.all_real, r.real_count) == (True, 2)
    assert not classify_reality(solve(Matrix2(4, 1, 1))).all_real
    r = classify_reality(solve(Matrix2(1, 0, 1)))
    assert (r.all_real, r.real_count) == (True, 1)
    assert r.to_json() == {"real_mult": 1, "nonreal_mult": 0, "all_real": True}


def test_classify_rejects_undecided():
    b = RootBox((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1)))
    s = SolutionSet(Matrix2(1, 0, 1), [Solution(b, b, 1, UNDECIDED)], 1)
    with pytest.raises(NotCertifiedError):
        classify_reality(s)


# ------------------------------------------------------------ unit square

def test_unit_square_examples():
    s = unit_square_solution(Matrix2(1, 0, 1))
    assert s.x1.contains(Fraction(1, 2)) and s.x2.contains(Fraction(1, 2))
    g = (sympy.sqrt(5) - 1) / 2
    s = unit_square_solution(Matrix2(2, 0, 2))
    assert encloses(s.x1, g) and encloses(s.x2, g)
    s = unit_square_solution(Matrix2(2, 1, 1))
    assert encloses(s.x1, 1 / SQRT2) and encloses(s.x2, 1 / (1 + 1 / SQRT2))
    assert s.multiplicity == 1 and s.reality == CERTIFIED_REAL


@given(pd_matrices(12))
def test_unit_square_bisection_matches_census(A):
    (lo1, hi1), (lo2, hi2) = unit_square_interval(A, 40)
    inside = [s for s in census(A).real_solutions if s.in_unit_square()]
    assert len(inside) == 1 and inside[0].multiplicity == 1
    s = inside[0]
    assert s.x1.real_part[0] <= hi1 and lo1 <= s.x1.real_part[1]
    assert s.x2.real_part[0] <= hi2 and lo2 <= s.x2.real_part[1]


def test_negative_b_lower_bound_property():
    for A in [Matrix2(5, -2, 3), Matrix2(7, -3, 4), Matrix2(9, -1, 1)]:
        N, _ = A.normalized()
        assert solve(A).total_multiplicity >= N.a - 1
