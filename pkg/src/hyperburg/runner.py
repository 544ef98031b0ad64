"""Execute one configured run: integrate, aggregate diagnostics, persist.

Outputs per run:

* ``records.csv`` with exactly the columns t, sup_norm, F, Fprime, E1, E2,
  E3, support_left, support_right, schwartz_gap, G_lower_bound (empty when
  no certificate applies), half_int_v2 - everything an acceptance check
  needs is recomputable from this file alone;
* ``report.json`` with the config echo, the certificate, the outcome, and
  the worst-case value of every monitored inequality margin.

Numbers are serialized with round-trip precision (repr), so re-running the
report's echoed config reproduces the CSV bit for bit.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import diagnostics
from .certificate import Certificate, build_certificate, comparison_check, g_closed_form, t_star
from .config import RunConfig, resolve_output_dir
from .errors import HyperburgError
from .initial_data import ProfileSpec, calibrated_profile, sample_initial_state
from .model import ModelParams, moment_thresholds
from .solver import RunOutcome, integrate

__all__ = ["RunReport", "execute_config", "write_csv", "CSV_COLUMNS"]

CSV_COLUMNS = (
    "t",
    "sup_norm",
    "F",
    "Fprime",
    "E1",
    "E2",
    "E3",
    "support_left",
    "support_right",
    "schwartz_gap",
    "G_lower_bound",
    "half_int_v2",
)


@dataclass
class RunReport:
    """Self-contained summary of one executed configuration.

    ``outcome`` is the live integration result for in-process consumers
    (suite assertions, tests); it is not part of the serialized report.
    """

    config: dict
    status: str
    t_final: float
    t_detect: Optional[float]
    certificate: dict
    worst: dict
    sobolev: dict
    n_records: int
    files: dict
    outcome: Optional[RunOutcome] = dataclasses.field(
        default=None, repr=False, compare=False
    )

    def to_dict(self) -> dict:
        doc = dataclasses.asdict(self)
        doc.pop("outcome")
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _fmt(x: float) -> str:
    """Round-trip decimal form (repr), shared by CSV and stdout paths."""
    return repr(float(x))


def write_csv(path: Path, outcome: RunOutcome, certificate: Certificate,
              params: ModelParams) -> None:
    """Write the record series in the fixed column order."""
    lines = [",".join(CSV_COLUMNS)]
    horizon = certificate.T_star if certificate.feasible else None
    for rec in outcome.records:
        if certificate.feasible and (horizon is None or rec.t < horizon):
            g_cell = _fmt(g_closed_form(rec.t, certificate.eps_chosen,
                                        certificate.G0, params))
        else:
            g_cell = ""
        cells = [
            _fmt(rec.t),
            _fmt(rec.sup_norm),
            _fmt(rec.F),
            _fmt(rec.Fprime),
            _fmt(rec.E1),
            _fmt(rec.E2),
            _fmt(rec.E3),
            _fmt(rec.support_left),
            _fmt(rec.support_right),
            _fmt(rec.schwartz_gap),
            g_cell,
            _fmt(rec.half_int_v2),
        ]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _certificate_dict(cert: Certificate, params: ModelParams) -> dict:
    tight = None
    if cert.feasible:
        tight = t_star(cert.eps_interval[1], cert.G0, params)
    return {
        "F0": cert.F0,
        "F1": cert.F1,
        "thresholds_met": cert.thresholds_met,
        "eps_interval": list(cert.eps_interval) if cert.feasible else None,
        "eps_chosen": cert.eps_chosen,
        "G0": cert.G0,
        "T_star": cert.T_star,
        "T_star_tightest": tight,
    }


def _worst_case(outcome: RunOutcome, cert: Certificate, params: ModelParams) -> dict:
    """Worst observed value of every monitored inequality margin.

    Margins with a record-dependent tolerance are reported relative to
    their own scale: schwartz_gap_rel = min gap / (1 + F^2) and
    comparison_margin_rel = min (F - G) / (1 + G), so the corresponding
    bounds read ``>= -1e-10`` and ``>= -1e-6``.
    """
    records = outcome.records
    worst: dict[str, Optional[float]] = {}

    worst["schwartz_gap_rel"] = min(
        r.schwartz_gap / (1.0 + r.F * r.F) for r in records
    )

    if len(records) >= 3:
        worst["identity_residual_max"] = diagnostics.identity_residual(records, params)
    else:
        worst["identity_residual_max"] = None

    gron = diagnostics.gronwall_check_E1(records, params)
    worst["gronwall_margin"] = gron
    e1_0 = records[0].E1
    worst["gronwall_margin_rel"] = gron / e1_0 if e1_0 > 0.0 else None

    if cert.feasible:
        worst["comparison_margin_rel"] = comparison_check(records, cert, params)
    else:
        worst["comparison_margin_rel"] = None

    excess = None
    if outcome.final_state is not None:
        dx = outcome.final_state.grid.dx
        for rec in records:
            if (rec.support_left, rec.support_right) == (0.0, 0.0):
                continue
            allowed = params.L + params.c * rec.t + 5.0 * dx
            e = max(rec.support_right - allowed, -allowed - rec.support_left)
            excess = e if excess is None else max(excess, e)
    worst["support_excess"] = excess
    return worst


def execute_config(
    config: RunConfig,
    out_dir: Optional[str | Path] = None,
) -> RunReport:
    """Build initial data, certify, integrate, aggregate, and persist.

    ``out_dir`` overrides the configured output directory (the
    HYPERBURG_OUT environment variable roots relative paths either way).
    Validation problems raise before any file is written.
    """
    params = config.params
    grid = config.grid
    if config.ic.uses_targets:
        profile = calibrated_profile(
            config.ic.family, params.L, grid,
            config.ic.F0_target, config.ic.F1_target,
        )
    else:
        profile = ProfileSpec(
            family=config.ic.family, a=config.ic.a, b=config.ic.b, L=params.L
        )
    state0 = sample_initial_state(params, grid, profile)

    f0 = diagnostics.moment_F(state0)
    f1 = diagnostics.moment_Fprime(state0)
    cert = build_certificate(params, f0, f1)

    outcome = integrate(
        state0,
        params,
        t_end=config.t_end,
        blowup_threshold=config.blowup_threshold,
        record_stride=config.record_stride,
        cfl=config.cfl,
    )

    last = outcome.records[-1]
    sobolev = {
        "H2": math.sqrt(max(last.sobolev_H2_accum, 0.0)),
        "H3": math.sqrt(max(last.sobolev_H3_accum, 0.0)),
    }

    target = resolve_output_dir(config, str(out_dir) if out_dir is not None else None)
    files: dict[str, Optional[str]] = {"csv": None, "report": None}
    report = RunReport(
        config=config.to_dict(),
        status=outcome.status.value,
        t_final=outcome.t_final,
        t_detect=outcome.t_detect,
        certificate=_certificate_dict(cert, params),
        worst=_worst_case(outcome, cert, params),
        sobolev=sobolev,
        n_records=len(outcome.records),
        files=files,
        outcome=outcome,
    )

    if config.output.emit_csv or config.output.emit_report:
        target.mkdir(parents=True, exist_ok=True)
    if config.output.emit_csv:
        csv_path = target / "records.csv"
        write_csv(csv_path, outcome, cert, params)
        files["csv"] = str(csv_path)
    if config.output.emit_report:
        report_path = target / "report.json"
        report_path.write_text(report.to_json() + "\n", encoding="utf-8")
        files["report"] = str(report_path)
    return report


def threshold_summary(params: ModelParams, F0: float, F1: float) -> dict:
    """Moment thresholds plus the strict verdict, for CLI output."""
    f0_min, f1_min = moment_thresholds(params)
    return {
        "F0_min": f0_min,
        "F1_min": f1_min,
        "F0": F0,
        "F1": F1,
        "thresholds_met": F0 > f0_min and F1 > f1_min,
    }


def certificate_summary(params: ModelParams, F0: float, F1: float) -> dict:
    """Full certificate for given moments, for CLI output."""
    cert = build_certificate(params, F0, F1)
    return _certificate_dict(cert, params)


def rerun_matches(report: RunReport, out_dir: str | Path) -> bool:
    """Re-execute a report's config echo and compare CSV bytes (True=match)."""
    from .config import config_from_dict

    echoed = config_from_dict(report.config)
    fresh = execute_config(echoed, out_dir=out_dir)
    if report.files["csv"] is None or fresh.files["csv"] is None:
        raise HyperburgError("both runs must emit CSV to compare")
    return (
        Path(report.files["csv"]).read_bytes()
        == Path(fresh.files["csv"]).read_bytes()
    )
