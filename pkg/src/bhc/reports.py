"""Report assembly and serialization for the command-line front end.

A command parses to a :class:`RunConfig`, runs pure computations from the
other modules and lands in a :class:`ReportDocument`: schema version, config
echo, projected rows, the list of failing rows and the wall time.  The same
rows serialize to an aligned text table, CSV (header row, UTF-8, '.' decimal
separator) and JSON (schema_version "1").  JSON carries full binary doubles
via ``repr`` round-tripping plus, when a constant is an exact power of two,
the rational exponent as a {num, den} pair; tables round half-even at the
requested precision.  Output is deterministic for a fixed config and seed,
byte for byte, apart from ``wall_time``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dataclass_field
from typing import Any

import numpy as np

from .core import DomainError, Field
from .recursion import (
    BaselineKind,
    ConstantRecord,
    Strategy,
    baseline,
    best_constant,
    compute_constant,
    constants_table,
)
from .verify import (
    VerificationReport,
    bh_suite,
    blei_suite,
    extremal_search,
    khinchine_suite,
    summing_suite,
)

__all__ = [
    "SCHEMA_VERSION",
    "DEFAULT_SEED",
    "RunConfig",
    "ReportDocument",
    "run_constants",
    "run_explain",
    "run_baselines",
    "run_verify",
    "run_search",
]

SCHEMA_VERSION = "1"
DEFAULT_SEED = 42

_COMPARE_COLUMNS = {
    # side-by-side columns mirroring the published comparison tables
    Field.REAL: (("one_step", Strategy.ONE_STEP), ("kaijser", Strategy.BASELINE_KAIJSER)),
    Field.COMPLEX: (
        ("queffelec_ds", Strategy.BASELINE_QUEFFELEC_DS),
        ("kaijser", Strategy.BASELINE_KAIJSER),
        ("original", Strategy.BASELINE_ORIGINAL),
    ),
}


@dataclass(frozen=True)
class RunConfig:
    """Echoable configuration of one CLI invocation."""

    command: str
    field: Field = Field.REAL
    strategy: Strategy = Strategy.HALVING
    m: int | None = None
    m_max: int | None = None
    dim: int | None = None
    n: int | None = None
    p: float | None = None
    trials: int | None = None
    budget: int | None = None
    seed: int = DEFAULT_SEED
    format: str = "table"
    precision: int = 4
    compare: bool = False
    verbose: bool = False
    subtarget: str | None = None

    def __post_init__(self):
        if not 1 <= self.precision <= 12:
            raise DomainError(f"precision must lie in [1, 12], got {self.precision}")
        if self.format not in ("table", "csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")

    def echo(self) -> dict[str, Any]:
        out: dict[str, Any] = {"command": self.command}
        for key in (
            "field",
            "strategy",
            "m",
            "m_max",
            "dim",
            "n",
            "p",
            "trials",
            "budget",
            "seed",
            "format",
            "precision",
            "compare",
            "verbose",
            "subtarget",
        ):
            value = getattr(self, key)
            if value is None:
                continue
            out[key] = value.value if isinstance(value, (Field, Strategy)) else value
        return out


@dataclass
class ReportDocument:
    config: RunConfig
    rows: list[dict[str, Any]]
    failures: list[dict[str, Any]] = dataclass_field(default_factory=list)
    wall_time: float = 0.0
    title: str = ""

    @property
    def exit_status(self) -> int:
        return 0 if not self.failures else 1

    def to_json(self) -> str:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.echo(),
            "rows": self.rows,
            "failures": self.failures,
            "wall_time": self.wall_time,
        }
        return json.dumps(payload, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        if self.rows:
            writer = csv.DictWriter(buffer, fieldnames=list(self.rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: _csv_cell(v) for k, v in row.items()})
        return buffer.getvalue()

    def to_table(self) -> str:
        lines = []
        if self.title:
            lines.append(self.title)
        if self.rows:
            # the raw {num, den} exponent duplicates the "exact" column
            headers = [k for k in self.rows[0].keys() if k != "exponent"]
            cells = [[_table_cell(row.get(h), self.config.precision) for h in headers] for row in self.rows]
            widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
            lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
            lines.append("  ".join("-" * w for w in widths))
            for row_cells in cells:
                lines.append("  ".join(c.ljust(w) for c, w in zip(row_cells, widths)))
        if self.failures:
            lines.append(f"FAILURES: {len(self.failures)}")
        return "\n".join(lines)

    def render(self) -> str:
        if self.config.format == "json":
            return self.to_json()
        if self.config.format == "csv":
            return self.to_csv().rstrip("\n")
        return self.to_table()


def _csv_cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return json.dumps(value)
    if isinstance(value, list):
        return json.dumps(value)
    return value


def _table_cell(value: Any, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


# --------------------------------------------------------------------------
# Row projections
# --------------------------------------------------------------------------

def _exponent_json(record: ConstantRecord) -> dict[str, int] | None:
    if record.dyadic_exponent is None:
        return None
    return {
        "num": record.dyadic_exponent.numerator,
        "den": record.dyadic_exponent.denominator,
    }


def _exact_label(record: ConstantRecord) -> str:
    if record.dyadic_exponent is not None:
        return f"2^({record.dyadic_exponent})"
    if record.extra_factor is not None:
        return record.extra_factor
    return ""


def constant_row(record: ConstantRecord, compare_with: tuple = ()) -> dict[str, Any]:
    row: dict[str, Any] = {
        "m": record.m,
        "field": record.field.value,
        "strategy": record.strategy.value,
        "value": record.value,
        "exponent": _exponent_json(record),
        "exact": _exact_label(record),
    }
    for label, other in compare_with:
        row[label] = other.value
        row[f"{label}_exact"] = _exact_label(other)
    return row


def report_row(report: VerificationReport, with_witness: bool = False) -> dict[str, Any]:
    row: dict[str, Any] = {
        "check": report.check,
        "params": report.params,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "ratio": report.ratio,
        "constant": report.constant.value if report.constant else None,
        "pass": report.passed,
        "seed": report.seed,
        "trials": report.trials,
    }
    if with_witness and report.witness is not None:
        witness = np.asarray(report.witness)
        if np.iscomplexobj(witness):
            row["witness_real"] = witness.real.tolist()
            row["witness_imag"] = witness.imag.tolist()
        else:
            row["witness"] = witness.tolist()
    return row


def _split_json(split) -> dict[str, str] | None:
    if split is None:
        return None
    return {
        "kind": split.kind.value,
        "q": str(split.q),
        "s1": str(split.s1),
        "s2": str(split.s2),
        "w": str(split.w),
        "f1": str(split.f1),
        "f2": str(split.f2),
    }


def trace_row(step) -> dict[str, Any]:
    return {
        "rule": step.rule,
        "m": step.m,
        "children": list(step.children),
        "split": _split_json(step.split),
        "khinchine": [
            {"p": use.p, "value": use.value, "power": str(use.power), "branch": use.branch.value}
            for use in step.khinchine
        ],
        "value": step.value,
    }


# --------------------------------------------------------------------------
# Command runners
# --------------------------------------------------------------------------

def run_constants(cfg: RunConfig) -> ReportDocument:
    records = constants_table(cfg.field, cfg.strategy, cfg.m_max, cfg.precision)
    rows = []
    for record in records:
        compare_with = ()
        if cfg.compare:
            compare_with = tuple(
                (label, compute_constant(record.m, cfg.field, strat))
                for label, strat in _COMPARE_COLUMNS[cfg.field]
                if strat is not cfg.strategy
            )
        rows.append(constant_row(record, compare_with))
    title = f"Bohnenblust-Hille constants, field={cfg.field.value}, strategy={cfg.strategy.value}"
    return ReportDocument(cfg, rows, title=title)


def run_explain(cfg: RunConfig) -> ReportDocument:
    record = compute_constant(cfg.m, cfg.field, cfg.strategy)
    rows = [trace_row(step) for step in record.trace]
    doc = ReportDocument(cfg, rows)
    doc.title = _explain_text(record, cfg.precision)
    return doc


def _explain_text(record: ConstantRecord, precision: int) -> str:
    tag = "C_R" if record.field is Field.REAL else "C_C"
    lines = [f"derivation of {tag}({record.m}), strategy {record.strategy.value}"]
    for step in record.trace:
        approx = f"{step.value:.{precision + 2}g}"
        if step.rule in ("base", "baseline"):
            lines.append(f"  [{step.rule}] {tag}({step.m}) = {approx}")
            continue
        children = ", ".join(f"{tag}({c})" for c in step.children)
        used = "; ".join(
            f"A({use.p:.6g})={use.value:.6g} [{use.branch.value}] ^{use.power}"
            for use in step.khinchine
        )
        split = step.split
        split_text = (
            f"s1={split.s1}, s2={split.s2}, w={split.w}, f1={split.f1}, f2={split.f2}"
        )
        lines.append(
            f"  [{step.rule}] {tag}({step.m}) from {children}: {split_text}; {used} -> {approx}"
        )
    exact = _exact_label(record)
    exact_text = f"{exact} ≈ " if exact else ""
    lines.append(f"  result: {tag}({record.m}) = {exact_text}{record.value:.{precision}g}")
    return "\n".join(lines)


def run_baselines(cfg: RunConfig) -> ReportDocument:
    rows = []
    for m in range(2, cfg.m_max + 1):
        row: dict[str, Any] = {"m": m}
        for label, kind in (
            ("queffelec_ds", BaselineKind.QUEFFELEC_DS),
            ("kaijser", BaselineKind.KAIJSER),
            ("original", BaselineKind.ORIGINAL),
        ):
            row[label] = baseline(m, kind, cfg.field).value
        rows.append(row)
    return ReportDocument(cfg, rows, title="classical baseline constants")


def run_verify(cfg: RunConfig) -> ReportDocument:
    trials = cfg.trials if cfg.trials is not None else 100
    if cfg.subtarget == "khinchine":
        ps = (cfg.p,) if cfg.p is not None else (1.0, 4.0 / 3.0, 1.5, 5.0 / 3.0, 2.0)
        reports = khinchine_suite(trials, n_max=cfg.n or 10, ps=ps, seed=cfg.seed)
    elif cfg.subtarget == "blei":
        reports = blei_suite(trials, seed=cfg.seed)
    elif cfg.subtarget == "bh":
        reports = bh_suite(cfg.m or 2, cfg.dim or 2, trials, seed=cfg.seed)
    elif cfg.subtarget == "summing":
        reports = summing_suite(cfg.m or 2, cfg.dim or 2, trials, seed=cfg.seed)
    else:
        raise DomainError(f"unknown verify subtarget {cfg.subtarget!r}")
    failures = [report_row(r) for r in reports if not r.passed]
    if cfg.verbose:
        rows = [report_row(r) for r in reports]
    else:
        rows = [_suite_summary(cfg.subtarget, reports)]
    return ReportDocument(cfg, rows, failures=failures, title=f"verify {cfg.subtarget}")


def _suite_summary(name: str, reports: list[VerificationReport]) -> dict[str, Any]:
    ratios = [r.ratio for r in reports]
    return {
        "check": name,
        "trials": len(reports),
        "passed": sum(1 for r in reports if r.passed),
        "failed": sum(1 for r in reports if not r.passed),
        "min_ratio": min(ratios) if ratios else None,
        "max_ratio": max(ratios) if ratios else None,
    }


def run_search(cfg: RunConfig) -> ReportDocument:
    report = extremal_search(
        cfg.m or 2,
        cfg.dim or 2,
        cfg.field,
        budget=cfg.budget or 100_000,
        seed=cfg.seed,
    )
    row = report_row(report, with_witness=True)
    if report.constant is not None:
        row["upper_bound"] = report.constant.value
        row["gap"] = report.constant.value - report.ratio
    failures = [] if report.passed else [report_row(report)]
    return ReportDocument(cfg, [row], failures=failures, title="extremal ratio search")
