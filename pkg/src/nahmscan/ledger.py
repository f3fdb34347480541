"""Closed-form solution-count predictors and their audit against computed data.

All predictors work in the orientation a >= d; ``audit`` normalizes first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import InvalidInputError, NormalizationError, WrongFormError
from .nahm import Matrix2, RealityReport

EXACT = "exact"
UPPER_BOUND = "upper_bound"

GENERIC = "generic"
DET_EQ_D_B_GT_D = "det_eq_d_b_gt_d"
DET_EQ_A = "det_eq_a"
DET_EQ_D_B_EQ_D = "det_eq_d_b_eq_d"
D_EQ_ONE = "d_eq_one"

# audit notes; the first group marks a failed check
BEZOUT_MISMATCH = "BEZOUT_MISMATCH"
LOWER_BOUND_VIOLATED = "LOWER_BOUND_VIOLATED"
REAL_BOUND_EXCEEDED = "REAL_BOUND_EXCEEDED"
REAL_GLOBAL_BOUND_EXCEEDED = "REAL_GLOBAL_BOUND_EXCEEDED"
INFINITY_BOUND_EXCEEDED = "INFINITY_BOUND_EXCEEDED"
UNIT_SQUARE_VIOLATION = "UNIT_SQUARE_VIOLATION"
REALITY_COUNT_MISMATCH = "REALITY_COUNT_MISMATCH"
ORIGIN_MULTIPLICITY_MISMATCH = "ORIGIN_MULTIPLICITY_MISMATCH"
# informational
NOT_ALL_REAL = "NOT_ALL_REAL"
ORIENTATION_SWAPPED = "ORIENTATION_SWAPPED"
I1_BOUND_GAP = "I1_BOUND_GAP"  # suffixed ":<gap>"
I2_BOUND_GAP = "I2_BOUND_GAP"

# real-solution bounds by parity, 1 = odd; keys (b, a, d) for b > 0, (c, a, d) for b < 0
POSITIVE_B_PARITY_BOUND = {
    (1, 1, 0): 3, (1, 0, 0): 5, (1, 0, 1): 3, (1, 1, 1): 7,
    (0, 1, 1): 1, (0, 1, 0): 2, (0, 0, 1): 2, (0, 0, 0): 9,
}
NEGATIVE_B_PARITY_BOUND = {
    (1, 1, 0): 7, (1, 0, 0): 13, (1, 0, 1): 7, (1, 1, 1): 7,
    (0, 1, 1): 1, (0, 1, 0): 7, (0, 0, 1): 7, (0, 0, 0): 19,
}
ZERO_B_REAL_BOUND = 4
POSITIVE_B_GLOBAL_REAL_BOUND = 9
NEGATIVE_B_GLOBAL_REAL_BOUND = 19


@dataclass(frozen=True)
class InfinityPrediction:
    value: int
    kind: str
    case_tag: str
    g: int = 0

    def to_json(self) -> dict:
        return {"value": self.value, "kind": self.kind, "case": self.case_tag, "g": self.g}


@dataclass
class AuditReport:
    matrix: Matrix2
    bezout_total: int
    i1: InfinityPrediction | None
    i2: InfinityPrediction | None
    affine_lower_bound: int
    real_upper_bound: int
    computed_total: int
    computed_real: int
    consistent: bool
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "bezout_total": self.bezout_total,
            "i1": self.i1.to_json() if self.i1 else None,
            "i2": self.i2.to_json() if self.i2 else None,
            "affine_lower_bound": self.affine_lower_bound,
            "real_upper_bound": self.real_upper_bound,
            "computed_total": self.computed_total,
            "computed_real": self.computed_real,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


def _require_positive_b(A: Matrix2):
    if A.b <= 0:
        raise WrongFormError("Bezout/infinity predictors cover b > 0 only")


def _require_normalized(A: Matrix2):
    if A.a < A.d:
        raise NormalizationError("expected a >= d; transpose the matrix first")


def bezout_total(A: Matrix2) -> int:
    _require_positive_b(A)
    return (A.a + A.b) * (A.b + A.d)


def predict_i1(A: Matrix2) -> InfinityPrediction:
    """Multiplicity of [1:0:0] in the homogenized system."""
    _require_positive_b(A)
    _require_normalized(A)
    a, b, d, det = A.a, A.b, A.d, A.det
    if det == d and b > d:
        g = gcd(2 * b, d)
        return InfinityPrediction(b * (b + d) + g, UPPER_BOUND, DET_EQ_D_B_GT_D, g)
    value = min(b * (b + d), d * (a + b - 1))
    return InfinityPrediction(value, EXACT, DET_EQ_D_B_EQ_D if det == d else GENERIC)


def predict_i2(A: Matrix2) -> InfinityPrediction:
    """Multiplicity of [0:1:0] in the homogenized system."""
    _require_positive_b(A)
    _require_normalized(A)
    a, b, d, det = A.a, A.b, A.d, A.det
    if det == a:
        return InfinityPrediction(b * (a + b) + d - 1, UPPER_BOUND, DET_EQ_A)
    if d == 1:
        return InfinityPrediction(a * (b + d - 1), EXACT, D_EQ_ONE)
    return InfinityPrediction(min(b * (b + a), a * (d + b - 1)), EXACT, GENERIC)


def affine_lower_bound(A: Matrix2) -> int:
    A, _ = A.normalized()
    a, b, d, det = A.a, A.b, A.d, A.det
    if b > 0:
        if det == a or (det == d and d < b):
            return a - d
        return a
    if b < 0:
        return a - 1
    return 1


def real_upper_bound(A: Matrix2) -> int:
    a, b, d = A.a, A.b, A.d
    if b > 0:
        return POSITIVE_B_PARITY_BOUND[(b % 2, a % 2, d % 2)]
    if b < 0:
        return NEGATIVE_B_PARITY_BOUND[(-b % 2, a % 2, d % 2)]
    return ZERO_B_REAL_BOUND


def audit(A: Matrix2, s, r: RealityReport) -> AuditReport:
    """Check a computed solution set against every applicable formula and bound.

    ``s`` is a SolutionSet or a Census for ``A``; ``r`` its reality report.
    """
    if s.matrix != A or r.matrix != A:
        raise InvalidInputError("audit inputs describe different matrices")
    N, swapped = A.normalized()
    notes: list[str] = []
    failed = False

    def fail(note):
        nonlocal failed
        failed = True
        notes.append(note)

    if swapped:
        notes.append(ORIENTATION_SWAPPED)
    total = s.total_multiplicity
    real = r.real_count
    bez = i1 = i2 = None
    if N.b > 0:
        bez = bezout_total(N)
        i1, i2 = predict_i1(N), predict_i2(N)
        if i1.kind == EXACT and i2.kind == EXACT:
            if total != bez - i1.value - i2.value:
                fail(BEZOUT_MISMATCH)
        else:
            exact, bound, tag = (i2, i1, I1_BOUND_GAP) if i1.kind == UPPER_BOUND else (i1, i2, I2_BOUND_GAP)
            inferred = bez - total - exact.value
            if inferred > bound.value:
                fail(INFINITY_BOUND_EXCEEDED)
            else:
                notes.append(f"{tag}:{bound.value - inferred}")
    lower = affine_lower_bound(A)
    upper = real_upper_bound(A)
    if total < lower:
        fail(LOWER_BOUND_VIOLATED)
    if real > upper:
        fail(REAL_BOUND_EXCEEDED)
    if (N.b > 0 and real > POSITIVE_B_GLOBAL_REAL_BOUND) or (N.b < 0 and real > NEGATIVE_B_GLOBAL_REAL_BOUND):
        fail(REAL_GLOBAL_BOUND_EXCEEDED)
    if r.real_count + r.nonreal_count != total:
        fail(REALITY_COUNT_MISMATCH)
    if N.b < 0 and s.excluded_origin_multiplicity != N.c**2:
        fail(ORIGIN_MULTIPLICITY_MISMATCH)
    if s.unit_square_multiplicities() != [1]:
        fail(UNIT_SQUARE_VIOLATION)
    if not r.all_real:
        notes.append(NOT_ALL_REAL)
    return AuditReport(A, bez if bez is not None else 0, i1, i2, lower, upper, total, real,
                       not failed, notes)
