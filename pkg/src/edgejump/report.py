"""Tagged comparison rows and their CSV/JSON serialization.

One row records a finite-size value against its asymptotic prediction plus
residuals, an optional empirical convergence order, and a PASS/FAIL verdict.
Complex values are always split re/im in serialized output.  Output is
deterministic given the inputs; the optional timestamp header line can be
suppressed for byte-identical reruns.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

CSV_HEADER = ["label", "n", "t", "lambda0", "beta_re", "beta_im",
              "kappa_re", "kappa_im", "finite_re", "finite_im",
              "asym_re", "asym_im", "abs_res", "rel_res", "order_est",
              "verdict"]


def safe_complex(v):
    """complex(v), saturating to +-inf when v exceeds double range."""
    if v is None:
        return None
    try:
        return complex(v)
    except OverflowError:
        try:
            re = float(v.real) if hasattr(v, "real") else math.inf
        except OverflowError:
            re = math.copysign(math.inf, 1 if v.real > 0 else -1)
        try:
            im = float(v.imag) if hasattr(v, "imag") else 0.0
        except OverflowError:
            im = math.copysign(math.inf, 1 if v.imag > 0 else -1)
        return complex(re, im)


@dataclass
class ReportRow:
    label: str
    n: int | None = None
    t: float | None = None
    lambda0: float | None = None
    beta: complex | None = None
    kappa: complex | None = None
    finite: complex | None = None
    asym: complex | None = None
    abs_res: float | None = None
    rel_res: float | None = None
    order_est: float | None = None
    verdict: str = ""

    def finish(self) -> "ReportRow":
        """Fill residuals from the stored values when not set explicitly."""
        self.finite = safe_complex(self.finite)
        self.asym = safe_complex(self.asym)
        if self.abs_res is None and self.finite is not None and self.asym is not None:
            try:
                self.abs_res = abs(self.finite - self.asym)
                scale = abs(self.asym) or abs(self.finite)
                self.rel_res = self.abs_res / scale if scale else math.inf
            except (OverflowError, ValueError):
                pass
        return self

    def sort_key(self):
        def k(x):
            return (x is None, x if x is not None else 0)
        b = complex(self.beta) if self.beta is not None else None
        return (self.label, k(self.n), k(self.t), k(self.lambda0),
                k(b.real if b else None), k(b.imag if b else None))

    def as_record(self) -> dict:
        def c(v):
            return None if v is None else complex(v)
        out = {
            "label": self.label, "n": self.n, "t": self.t, "lambda0": self.lambda0,
            "beta_re": c(self.beta).real if self.beta is not None else None,
            "beta_im": c(self.beta).imag if self.beta is not None else None,
            "kappa_re": c(self.kappa).real if self.kappa is not None else None,
            "kappa_im": c(self.kappa).imag if self.kappa is not None else None,
            "finite_re": c(self.finite).real if self.finite is not None else None,
            "finite_im": c(self.finite).imag if self.finite is not None else None,
            "asym_re": c(self.asym).real if self.asym is not None else None,
            "asym_im": c(self.asym).imag if self.asym is not None else None,
            "abs_res": self.abs_res, "rel_res": self.rel_res,
            "order_est": self.order_est, "verdict": self.verdict,
        }
        return out


@dataclass
class Report:
    """A verdicted collection of rows for one verification run."""

    name: str
    rows: list = field(default_factory=list)
    passed: bool = True
    detail: str = ""

    def add(self, row: ReportRow):
        self.rows.append(row.finish())

    def fail(self, detail: str):
        self.passed = False
        self.detail = (self.detail + "; " + detail).strip("; ")

    def note(self, detail: str):
        """Attach diagnostic text without failing the check."""
        self.detail = (self.detail + "; " + detail).strip("; ")

    def sorted_rows(self):
        return sorted(self.rows, key=ReportRow.sort_key)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def rows_to_csv(rows, timestamp: bool = False) -> str:
    buf = io.StringIO()
    if timestamp:
        buf.write(f"# generated {datetime.now(timezone.utc).isoformat()}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        rec = r.as_record()
        w.writerow([_fmt(rec[k]) for k in CSV_HEADER])
    return buf.getvalue()


def write_report(reports, path, fmt: str = "csv", timestamp: bool = False) -> None:
    """Serialize reports: rows in the chosen format plus a JSON summary.

    ``path`` is the row file; the machine-readable PASS/FAIL summary goes to
    ``path`` with a ``.summary.json`` suffix appended.
    """
    reports = list(reports)
    all_rows = [r for rep in reports for r in rep.sorted_rows()]
    if fmt == "csv":
        payload = rows_to_csv(all_rows, timestamp=timestamp)
    elif fmt == "json":
        payload = json.dumps([r.as_record() for r in all_rows], indent=1)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w") as fh:
        fh.write(payload)
    summary = {
        "checks": [{"name": rep.name, "passed": rep.passed, "detail": rep.detail}
                   for rep in reports],
        "all_passed": all(rep.passed for rep in reports),
    }
    with open(str(path) + ".summary.json", "w") as fh:
        json.dump(summary, fh, indent=1)
