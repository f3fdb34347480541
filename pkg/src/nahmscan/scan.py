"""Parameter sweeps over rank-2 matrices and the all-real classification check."""

from __future__ import annotations

import csv
import io
import json
import signal
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .dilog import DEFAULT_MAX_DENOMINATOR, DEFAULT_PRECISION, xi_value
from .errors import InvalidInputError
from .exact.roots import DEFAULT_WIDTH, dyadic_str, is_dyadic
from .ledger import audit
from .nahm import Matrix2, census, classify_reality
from .qseries import QSeriesSpec, nahm_sum

THEOREM_MATRICES = frozenset(Matrix2(*t) for t in [
    (2, 1, 1), (1, 1, 2), (4, 2, 2), (2, 2, 4),
    (1, -1, 2), (2, -1, 1), (2, -1, 2),
    (2, 0, 2), (1, 0, 2), (2, 0, 1), (1, 0, 1),
])
# all solutions of these are not real, although the dilogarithm test alone passes
COUNTEREXAMPLES = (Matrix2(4, 1, 1), Matrix2(1, 1, 4))

CSV_COLUMNS = ("a", "b", "d", "det", "total_mult", "real_mult", "all_real", "bezout",
               "i1", "i1_kind", "i2", "i2_kind", "lower", "upper", "consistent", "L_ratio_detected")

RANGE_NOTE = ("default range a,d in [1,30], |b| <= 29 covers every candidate left by the "
              "inequalities a <= 9 or a - b <= 9 (b > 0) and a, -b, d <= 20 (b < 0); "
              "widen the range flags to push further")

DEFAULT_TIMEOUT = 60


@dataclass(frozen=True)
class ScanConfig:
    a_range: tuple[int, int] = (1, 30)
    d_range: tuple[int, int] = (1, 30)
    b_range: tuple[int, int] = (-29, 29)
    width: Fraction = DEFAULT_WIDTH
    precision_bits: int = DEFAULT_PRECISION
    workers: int = 1
    emit: str = "json"
    include_qseries: bool = False
    qseries_order: Fraction = Fraction(10)
    dilog_all: bool = False
    timeout: float = DEFAULT_TIMEOUT

    def __post_init__(self):
        for name in ("a_range", "d_range", "b_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise InvalidInputError(f"{name} is empty: {lo} > {hi}")
        if self.workers < 1:
            raise InvalidInputError("workers must be positive")
        if self.emit not in ("json", "csv"):
            raise InvalidInputError(f"unknown emit format {self.emit!r}")
        if self.precision_bits < 64:
            raise InvalidInputError("precision must be at least 64 bits")

    def matrices(self) -> list[Matrix2]:
        out = [Matrix2(a, b, d)
               for a in range(self.a_range[0], self.a_range[1] + 1)
               for b in range(self.b_range[0], self.b_range[1] + 1)
               for d in range(self.d_range[0], self.d_range[1] + 1)]
        return sorted(A for A in out if A.is_positive_definite())

    def to_json(self) -> dict:
        # workers and the output format are left out: they must not change the report
        return {
            "a_range": list(self.a_range),
            "d_range": list(self.d_range),
            "b_range": list(self.b_range),
            "width": dyadic_str(self.width) if is_dyadic(self.width) else str(self.width),
            "precision_bits": self.precision_bits,
            "include_qseries": self.include_qseries,
            "qseries_order": str(self.qseries_order),
            "dilog_all": self.dilog_all,
            "timeout": self.timeout,
        }


@dataclass
class ScanReport:
    config: ScanConfig
    rows: list[dict]
    all_real_matrices: list[Matrix2] = field(default_factory=list)
    inconsistencies: list[Matrix2] = field(default_factory=list)
    errors: list[Matrix2] = field(default_factory=list)

    def row_for(self, A: Matrix2) -> dict | None:
        for r in self.rows:
            if (r["a"], r["b"], r["d"]) == (A.a, A.b, A.d):
                return r
        return None

    def to_json(self) -> dict:
        return {
            "range_note": RANGE_NOTE,
            "config": self.config.to_json(),
            "row_count": len(self.rows),
            "all_real_matrices": [A.to_json() for A in self.all_real_matrices],
            "inconsistencies": [A.to_json() for A in self.inconsistencies],
            "errors": [A.to_json() for A in self.errors],
            "rows": self.rows,
        }

    def dumps(self, emit: str | None = None) -> str:
        emit = emit or self.config.emit
        if emit == "json":
            return json.dumps(self.to_json(), indent=1, ensure_ascii=False) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(["" if r.get(k) is None else _csv_cell(r[k]) for k in CSV_COLUMNS])
        return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


class _RowTimeout(Exception):
    pass


def _on_alarm(signum, frame):
    raise _RowTimeout()


def _row(A: Matrix2, config: ScanConfig) -> dict:
    cen = census(A, config.width)
    rep = classify_reality(cen)
    aud = audit(A, cen, rep)
    row = {
        "a": A.a, "b": A.b, "d": A.d, "det": A.det,
        "total_mult": cen.total_multiplicity,
        "real_mult": rep.real_count,
        "all_real": rep.all_real,
        "bezout": aud.bezout_total if A.b > 0 else None,
        "i1": aud.i1.value if aud.i1 else None,
        "i1_kind": aud.i1.kind if aud.i1 else None,
        "i2": aud.i2.value if aud.i2 else None,
        "i2_kind": aud.i2.kind if aud.i2 else None,
        "lower": aud.affine_lower_bound,
        "upper": aud.real_upper_bound,
        "consistent": aud.consistent,
        "L_ratio_detected": None,
        "projection": cen.projection,
        "unit_square_mults": cen.unit_square_multiplicities(),
        "reality": rep.to_json(),
        "audit": aud.to_json(),
        "dilog": None,
        "qseries": None,
        "error": None,
    }
    if rep.all_real or config.dilog_all:
        dl = xi_value(A, config.precision_bits, DEFAULT_MAX_DENOMINATOR)
        row["dilog"] = dl.to_json()
        row["L_ratio_detected"] = None if dl.detected is None else str(dl.detected)
    if config.include_qseries:
        row["qseries"] = nahm_sum(QSeriesSpec(A, order=config.qseries_order)).to_json()
    return row


def _error_row(A: Matrix2, message: str) -> dict:
    row = {k: None for k in CSV_COLUMNS}
    row.update({"a": A.a, "b": A.b, "d": A.d, "det": A.det, "consistent": False,
                "projection": None, "unit_square_mults": None, "reality": None, "audit": None, "dilog": None,
                "qseries": None, "error": message})
    return row


def scan_row(A: Matrix2, config: ScanConfig) -> dict:
    """One report row; failures become error rows instead of propagating."""
    use_alarm = config.timeout and threading.current_thread() is threading.main_thread()
    if use_alarm:
        previous = signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, config.timeout)
    try:
        return _row(A, config)
    except _RowTimeout:
        return _error_row(A, f"timeout after {config.timeout} s")
    except Exception as e:  # per-row isolation: record and move on
        return _error_row(A, f"{type(e).__name__}: {e}")
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, previous)


def _scan_chunk(args) -> list[dict]:
    triples, config = args
    return [scan_row(Matrix2(*t), config) for t in triples]


def scan(config: ScanConfig) -> ScanReport:
    mats = config.matrices()
    if config.workers == 1 or len(mats) < 2:
        rows = [scan_row(A, config) for A in mats]
    else:
        # interleaved chunks spread the expensive large-entry matrices over workers
        k = config.workers * 8
        chunks = [[(A.a, A.b, A.d) for A in mats[i::k]] for i in range(k)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = [r for part in pool.map(_scan_chunk, [(c, config) for c in chunks if c]) for r in part]
    rows.sort(key=lambda r: (r["a"], r["b"], r["d"]))
    report = ScanReport(config, rows)
    for r in rows:
        A = Matrix2(r["a"], r["b"], r["d"])
        if r["error"] is not None:
            report.errors.append(A)
        elif not r["consistent"]:
            report.inconsistencies.append(A)
        if r["all_real"]:
            report.all_real_matrices.append(A)
    return report


@dataclass
class TheoremCheck:
    ok: bool
    missing: list[Matrix2]
    unexpected: list[Matrix2]
    counterexamples_ok: bool
    diagnostics: list[str]
    report: ScanReport

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "missing": [A.to_json() for A in self.missing],
            "unexpected": [A.to_json() for A in self.unexpected],
            "counterexamples_ok": self.counterexamples_ok,
            "diagnostics": self.diagnostics,
            "all_real_matrices": [A.to_json() for A in self.report.all_real_matrices],
            "errors": [A.to_json() for A in self.report.errors],
            "inconsistencies": [A.to_json() for A in self.report.inconsistencies],
        }


def compare_theorem(report: ScanReport, expected=THEOREM_MATRICES) -> TheoremCheck:
    expected = frozenset(expected)
    found = frozenset(report.all_real_matrices)
    missing = sorted(expected - found)
    unexpected = sorted(found - expected)
    diagnostics = [f"missing from scan result: {A}" for A in missing]
    diagnostics += [f"all-real but not expected: {A}" for A in unexpected]
    counter_ok = True
    for A in COUNTEREXAMPLES:
        row = report.row_for(A)
        if row is None:
            counter_ok = False
            diagnostics.append(f"counterexample {A} not scanned")
        elif row["all_real"] is not False:
            counter_ok = False
            diagnostics.append(f"counterexample {A} classified all_real={row['all_real']}")
        if A in expected:
            counter_ok = False
            diagnostics.append(f"counterexample {A} appears in the expected list")
    for A in report.errors:
        diagnostics.append(f"error row {A}: {report.row_for(A)['error']}")
    ok = not missing and not unexpected and counter_ok and not report.errors
    return TheoremCheck(ok, missing, unexpected, counter_ok, diagnostics, report)


def verify_theorem(config: ScanConfig | None = None, expected=THEOREM_MATRICES) -> TheoremCheck:
    return compare_theorem(scan(config or ScanConfig()), expected)
