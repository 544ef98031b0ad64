"""Acceptance criteria, one test per criterion, each printing PASS/FAIL.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  Tolerances are pinned here exactly as stated; the expensive
simulation fixtures live in conftest.py and are shared across the suite.
"""

import math
from pathlib import Path

import numpy as np

from hyperburg import (
    aux_ode_oracle,
    g_closed_form,
    moment_thresholds,
    t_star,
    validate_params,
)
from hyperburg import certificate as cert_mod
from hyperburg.config import config_from_dict
from hyperburg.diagnostics import ConeSpec, cone_max, gronwall_check_E1
from hyperburg.runner import execute_config
from hyperburg.solver import RunStatus, estimate_blowup_time
from hyperburg.suite import (
    BLOWUP_TSTAR_EPS,
    CONE_APEX,
    SCAN_INSTANCES,
    SCAN_SEED,
    blowup_preset_config,
    cone_preset_config,
    epsilon_scan_oracle,
    identity_preset_config,
    propagation_preset_config,
    smalldata_preset_config,
)

UNIT = validate_params(1.0, 1.0, 1.0)


def check(num: int, description: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {description}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_01_threshold_arithmetic():
    f0_min, f1_min = moment_thresholds(UNIT)
    ok = (
        abs(f0_min - 112.0 / 3.0) <= 1e-12 * (112.0 / 3.0)
        and abs(f1_min - 448.0 / 3.0) <= 1e-12 * (448.0 / 3.0)
    )
    check(1, "moment thresholds equal (112/3, 448/3) to 1e-12 relative", ok,
          f"got ({f0_min!r}, {f1_min!r})")


def test_criterion_02_certificate_vs_brute_force():
    rng = np.random.default_rng(SCAN_SEED)
    mismatches = 0
    nonempty = 0
    for _ in range(SCAN_INSTANCES):
        g0 = float(rng.uniform(1.0, 400.0))
        f1 = float(rng.uniform(1.0, 1000.0))
        interval = cert_mod.epsilon_interval(UNIT, g0, f1)
        scanned = epsilon_scan_oracle(UNIT, g0, f1)
        if interval is None:
            mismatches += scanned is not None
            continue
        nonempty += 1
        if scanned is None:
            mismatches += 1
            continue
        if (abs(scanned[0] - interval[0]) > 1e-4 + 1e-9
                or abs(scanned[1] - interval[1]) > 1e-4 + 1e-9):
            mismatches += 1
    documented_empty = cert_mod.epsilon_interval(UNIT, 100.0, 200.0) is None
    documented_thresholds = cert_mod.check_moment_thresholds(UNIT, 100.0, 200.0)
    ok = mismatches == 0 and documented_empty and documented_thresholds
    check(2, "eps interval matches dense scan on 100 instances; documented "
             "threshold-passing case is infeasible", ok,
          f"{nonempty} feasible, {mismatches} mismatches, "
          f"G0=100/F1=200 empty={documented_empty}")


def test_criterion_03_closed_form_vs_ode_oracle():
    ts = t_star(1.0, 64.0, UNIT)
    ts_ok = abs(ts - (math.sqrt(2.0) - 1.0)) <= 1e-12
    oracle = aux_ode_oracle(1.0, 64.0, UNIT, 0.9 * ts)
    closed = np.array([g_closed_form(t, 1.0, 64.0, UNIT) for t in oracle.t])
    rel = float(np.max(np.abs(oracle.G - closed) / closed))
    ok = ts_ok and not oracle.diverged and rel <= 1e-8
    check(3, "closed-form minorant matches adaptive integration to 1e-8 "
             "on [0, 0.9 T*], T* = sqrt(2) - 1", ok,
          f"T*={ts!r}, max rel dev {rel:.3e}")


def test_criterion_04_moment_identity_convergence(identity_reports):
    residuals = [r.worst["identity_residual_max"] for r in identity_reports]
    ratios = [residuals[i - 1] / residuals[i] for i in range(1, len(residuals))]
    ok = all(r >= 3.0 for r in ratios)
    check(4, "discrete residual of mu F'' + F' = 1/2 int v^2 shrinks by "
             ">= 3x per (dx, dt) halving over n in {512, 1024, 2048}", ok,
          "residuals " + ", ".join(f"{r:.3e}" for r in residuals)
          + "; ratios " + ", ".join(f"{r:.2f}" for r in ratios))


def test_criterion_05_schwartz_bound_everywhere(all_preset_reports):
    worst_tag, worst_val = None, math.inf
    for tag, report in all_preset_reports.items():
        for rec in report.outcome.records:
            margin = rec.schwartz_gap + 1e-10 * (1.0 + rec.F**2)
            rel = rec.schwartz_gap / (1.0 + rec.F**2)
            if rel < worst_val:
                worst_tag, worst_val = tag, rel
            if margin < 0.0:
                break
    ok = worst_val >= -1e-10
    check(5, "schwartz_gap >= -1e-10 (1+F^2) at every record of every "
             "suite preset", ok, f"worst {worst_val:.3e} in {worst_tag}")


def test_criterion_06_finite_propagation_speed(propagation_report, cone_bundle):
    excess = propagation_report.worst["support_excess"]
    support_ok = (
        propagation_report.status == RunStatus.COMPLETED.value
        and excess is not None
        and excess <= 0.0
    )
    config, _, states = cone_bundle
    cm = cone_max(states, ConeSpec(*CONE_APEX), config.params)
    gsup = max(s.sup_norm() for s in states)
    cone_ok = cm <= 1e-10 * (1.0 + gsup)
    check(6, "support stays inside [-(L+ct)-5dx, (L+ct)+5dx] to t=2 and "
             "cone_max <= 1e-10 (1+sup) on a data-free cone",
          support_ok and cone_ok,
          f"worst support excess {excess:.3e}, cone_max {cm:.3e}")


def test_criterion_07_blowup_reproduction(blowup_reports):
    detected = all(
        r.status == RunStatus.BLOWUP_DETECTED.value for r in blowup_reports
    )
    estimate, converged = estimate_blowup_time(
        [r.outcome for r in blowup_reports]
    )
    ts_ref = t_star(BLOWUP_TSTAR_EPS, 40.0, UNIT)
    time_ok = estimate <= 1.1 * ts_ref
    interval = blowup_reports[-1].certificate["eps_interval"]
    interval_ok = (
        abs(interval[0] - 0.6325) <= 5e-4 and abs(interval[1] - 0.6564) <= 5e-4
    )
    # per-record comparison F >= G - 1e-6 (1+G), eps = certificate midpoint
    comparison_ok = True
    worst_margin = math.inf
    for report in blowup_reports:
        cert = cert_mod.build_certificate(
            UNIT, report.certificate["F0"], report.certificate["F1"]
        )
        for rec in report.outcome.records:
            if rec.t >= cert.T_star:
                continue
            g = g_closed_form(rec.t, cert.eps_chosen, cert.G0, UNIT)
            margin = rec.F - g
            worst_margin = min(worst_margin, margin / (1.0 + g))
            if margin < -1e-6 * (1.0 + g):
                comparison_ok = False
    ok = detected and converged and time_ok and interval_ok and comparison_ok
    check(7, "certified preset blows up: converged t_detect <= 1.1 T* "
             "and F >= G - 1e-6 (1+G) before detection", ok,
          f"t_detect={estimate:.5f}, 1.1 T*={1.1 * ts_ref:.5f}, "
          f"eps interval ~ ({interval[0]:.4f}, {interval[1]:.4f}], "
          f"worst comparison margin {worst_margin:.3e}")


def test_criterion_08_small_data_regularity(smalldata_report):
    recs = smalldata_report.outcome.records
    ok = (
        smalldata_report.status == RunStatus.COMPLETED.value
        and smalldata_report.t_final >= 50.0
        and recs[-1].sup_norm <= recs[0].sup_norm
    )
    check(8, "small-data preset (sup 0.05, w0=0) completes to t=50 with "
             "non-increased sup norm", ok,
          f"sup(0)={recs[0].sup_norm:.4e}, sup(end)={recs[-1].sup_norm:.4e}")


def test_criterion_09_gronwall_energy_bound(
    propagation_report, cone_bundle, identity_reports, smalldata_report
):
    non_blowup = {
        "propagation": propagation_report,
        "cone": cone_bundle[1],
        "smalldata": smalldata_report,
    }
    for i, rep in enumerate(identity_reports):
        non_blowup[f"identity-{i}"] = rep
    worst_tag, worst = None, math.inf
    for tag, report in non_blowup.items():
        p = report.config["params"]
        params = validate_params(p["mu"], p["nu"], p["L"])
        e1_0 = report.outcome.records[0].E1
        margin = gronwall_check_E1(report.outcome.records, params)
        rel = margin / e1_0 if e1_0 > 0 else 0.0
        if rel < worst:
            worst_tag, worst = tag, rel
    ok = worst >= -1e-8
    check(9, "exp((M/mu c) t) E1(0) - E1(t) >= -1e-8 E1(0) on all "
             "non-blow-up presets", ok, f"worst {worst:.3e} in {worst_tag}")


def test_criterion_10_determinism(tmp_path):
    cheapest = {
        "propagation": propagation_preset_config,
        "cone": cone_preset_config,
        "identity": lambda out=None: identity_preset_config(512, out),
        "blowup": lambda out=None: blowup_preset_config(1024, out),
        "smalldata": smalldata_preset_config,
    }
    failures = []
    for tag, factory in cheapest.items():
        doc = factory().to_dict()
        doc["output"] = {"directory": str(tmp_path / tag / "a"),
                         "emit_csv": True, "emit_report": True}
        first = execute_config(config_from_dict(doc))
        second = execute_config(config_from_dict(doc),
                                out_dir=tmp_path / tag / "b")
        a = Path(first.files["csv"]).read_bytes()
        b = Path(second.files["csv"]).read_bytes()
        if a != b:
            failures.append(tag)
    ok = not failures
    check(10, "re-running every preset family reproduces bit-identical CSV",
          ok, f"checked {', '.join(cheapest)}"
              + (f"; mismatches: {failures}" if failures else ""))
