from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nahmscan.errors import InvalidInputError
from nahmscan.nahm import Matrix2
from nahmscan.qseries import (
    DIAGONAL,
    ROW,
    SHUFFLED,
    QSeries,
    QSeriesSpec,
    exponent_denominator,
    nahm_sum,
    pochhammer_inverse,
    series_equal,
)

t = sympy.symbols("t")


def oracle(spec: QSeriesSpec, D: int) -> dict[int, Fraction]:
    """Independent double sum in sympy with q = t^D, summing a generous box of n."""
    A = spec.matrix
    total = 0
    cut = int(spec.order * D)
    box = 12
    for n1 in range(box):
        for n2 in range(box):
            e = Fraction(A.a * n1 * n1 + 2 * A.b * n1 * n2 + A.d * n2 * n2, 2) \
                + spec.B[0] * n1 + spec.B[1] * n2 + spec.C
            if e > spec.order:
                continue
            den = 1
            for n in (n1, n2):
                for k in range(1, n + 1):
                    den *= 1 - t ** (k * D)
            total += t ** int(e * D - spec.C * D) / den
    ser = sympy.series(total, t, 0, cut - int(spec.C * D) + 1).removeO()
    poly = sympy.Poly(ser, t)
    out = {}
    for (k,), c in poly.terms():
        out[k + int(spec.C * D)] = Fraction(int(c))
    return {k: c for k, c in out.items() if k <= cut and c}


def test_pochhammer_examples():
    assert pochhammer_inverse(0, 5).coeffs == {0: 1}
    assert pochhammer_inverse(1, 3).coeffs == {0: 1, 1: 1, 2: 1, 3: 1}
    assert pochhammer_inverse(2, 4).coeffs == {0: 1, 1: 1, 2: 2, 3: 2, 4: 3}
    with pytest.raises(InvalidInputError):
        pochhammer_inverse(2, 0)


def test_nahm_sum_2_0_2():
    s = nahm_sum(QSeriesSpec(Matrix2(2, 0, 2), order=4))
    assert s.D == 1 and s.coeffs == {0: 1, 1: 2, 2: 3, 3: 4, 4: 7}


def test_nahm_sum_2_0_2_against_rank_one_square():
    """The rank-2 sum with a diagonal matrix is the square of the rank-1 sum."""
    q = sympy.symbols("q")
    single = sum(q ** (m * m) / sympy.prod([1 - q**k for k in range(1, m + 1)]) for m in range(4))
    ser = sympy.Poly(sympy.series(single**2, q, 0, 9).removeO(), q)
    expected = {k: Fraction(int(c)) for (k,), c in ser.terms() if k <= 8}
    assert nahm_sum(QSeriesSpec(Matrix2(2, 0, 2), order=8)).coeffs == expected


def test_constant_term_is_one_at_C():
    s = nahm_sum(QSeriesSpec(Matrix2(3, 1, 2), (Fraction(1, 2), Fraction(1, 3)), Fraction(-1, 12), order=3))
    assert s.coefficient(Fraction(-1, 12)) == 1


def test_identity_matrix_half_integral():
    spec = QSeriesSpec(Matrix2(1, 0, 1), order=3)
    assert exponent_denominator(spec) == 2
    s = nahm_sum(spec)
    assert s.D == 2
    assert s.coeffs == oracle(spec, 2)


@pytest.mark.parametrize("spec", [
    QSeriesSpec(Matrix2(2, 1, 1), order=5),
    QSeriesSpec(Matrix2(4, 2, 2), (Fraction(1, 2), Fraction(0)), Fraction(-1, 20), order=4),
    QSeriesSpec(Matrix2(2, -1, 2), (Fraction(1, 3), Fraction(-1, 3)), Fraction(1, 10), order=3),
    QSeriesSpec(Matrix2(1, 0, 2), (Fraction(-1, 2), Fraction(1, 2)), Fraction(0), order=3),
])
def test_nahm_sum_against_oracle(spec):
    s = nahm_sum(spec)
    assert s.coeffs == oracle(spec, s.D)


specs = st.builds(
    lambda a, d, b, b1, b2, c, order: QSeriesSpec(
        Matrix2(a, b if a * d - b * b > 0 else 0, d), (b1, b2), c, order),
    st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3),
    st.fractions(-2, 2, max_denominator=6), st.fractions(-2, 2, max_denominator=6),
    st.fractions(-1, 1, max_denominator=12), st.integers(1, 5).map(Fraction),
)


@settings(max_examples=50)
@given(specs, st.integers(0, 1000))
def test_enumeration_order_independence(spec, seed):
    base = nahm_sum(spec, ROW)
    assert nahm_sum(spec, DIAGONAL) == base
    assert nahm_sum(spec, SHUFFLED, seed) == base


@settings(max_examples=30)
@given(specs)
def test_truncation_monotone(spec):
    small = nahm_sum(spec)
    big = nahm_sum(QSeriesSpec(spec.matrix, spec.B, spec.C, spec.order + 2))
    assert series_equal(small, big, spec.order)
    assert all(k <= spec.order * small.D for k in small.coeffs)


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(-4, 4))
def test_integer_coefficients_when_B_C_vanish(a, d, b):
    if a * d - b * b <= 0:
        b = 0
    s = nahm_sum(QSeriesSpec(Matrix2(a, b, d), order=6))
    assert all(c.denominator == 1 and c > 0 for c in s.coeffs.values())


def test_series_equal_examples():
    x = QSeries(1, {0: 1, 1: 1})
    y = QSeries(1, {0: 1, 1: 1, 2: 1})
    assert series_equal(x, x, 5)
    assert series_equal(x, y, 1)
    assert not series_equal(x, y, 2)
    assert series_equal(QSeries(2, {0: 1, 2: 3}), QSeries(1, {0: 1, 1: 3}), 1)


def test_json_shape():
    s = nahm_sum(QSeriesSpec(Matrix2(1, 0, 1), order=1))
    assert s.to_json() == {"D": 2, "coeffs": [[0, "1/1"], [1, "2/1"], [2, "1/1"]]}


def test_spec_validation():
    with pytest.raises(InvalidInputError):
        QSeriesSpec(Matrix2(1, 1, 1))
    with pytest.raises(InvalidInputError):
        QSeriesSpec(Matrix2(1, 0, 1), order=0)
    with pytest.raises(InvalidInputError):
        QSeriesSpec(Matrix2(1, 0, 1), (Fraction(1, 61), Fraction(0)))
