"""Command-line interface.

Subcommands:

* ``run --config FILE [--out DIR]``: execute one configured run.  Exit
  status encodes the outcome: 0 completed, 2 blow-up detected, 3 numerical
  failure, 1 usage or validation error.
* ``thresholds --mu --nu --L --F0 --F1``: print the certified-blow-up
  moment thresholds and the strict verdict as JSON.
* ``certificate --mu --nu --L --F0 --F1``: print the full certificate
  (eps interval, chosen eps, T*) as JSON.
* ``suite PRESET [--out DIR]``: run a named verification preset; one
  PASS/FAIL line per assertion; exit 0 iff all pass.
* ``convergence --config FILE --levels K [--out DIR]``: refinement study
  of the blow-up detection time (doubling n per level); prints the time
  sequence and the convergence flag as JSON.

The HYPERBURG_OUT environment variable, when set, roots all relative
output directories.  Numeric output is round-trip double precision.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional

from .config import load_config
from .errors import HyperburgError
from .model import validate_params
from .runner import certificate_summary, execute_config, threshold_summary
from .solver import RunStatus, estimate_blowup_time
from .suite import PRESET_NAMES, run_suite

__all__ = ["main", "entry"]

_STATUS_EXIT = {
    RunStatus.COMPLETED.value: 0,
    RunStatus.BLOWUP_DETECTED.value: 2,
    RunStatus.NUMERICAL_FAILURE.value: 3,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperburg",
        description=(
            "Simulate the hyperbolic Burgers equation "
            "mu v_tt + v_t + v v_x = nu v_xx and verify its propagation, "
            "moment, energy, and blow-up certificates numerically."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a configured run")
    p_run.add_argument("--config", required=True, help="JSON config file")
    p_run.add_argument("--out", default=None, help="output directory override")

    def add_moment_args(p):
        p.add_argument("--mu", type=float, required=True)
        p.add_argument("--nu", type=float, required=True)
        p.add_argument("--L", type=float, required=True)
        p.add_argument("--F0", type=float, required=True, help="initial moment int x v dx")
        p.add_argument("--F1", type=float, required=True, help="initial moment int x v_t dx")

    p_thr = sub.add_parser("thresholds", help="print moment thresholds and verdict")
    add_moment_args(p_thr)

    p_cert = sub.add_parser("certificate", help="print the blow-up certificate")
    add_moment_args(p_cert)

    p_suite = sub.add_parser("suite", help="run a verification preset")
    p_suite.add_argument("preset", help=f"one of: {', '.join(PRESET_NAMES)}")
    p_suite.add_argument("--out", default=None, help="output root for member runs")

    p_conv = sub.add_parser("convergence", help="blow-up time refinement study")
    p_conv.add_argument("--config", required=True, help="base JSON config file")
    p_conv.add_argument("--levels", type=int, required=True,
                        help="number of refinement levels (n doubles per level)")
    p_conv.add_argument("--out", default=None, help="output root override")
    return parser


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _cmd_run(args) -> int:
    config = load_config(args.config)
    report = execute_config(config, out_dir=args.out)
    _print_json(report.to_dict())
    return _STATUS_EXIT[report.status]


def _cmd_thresholds(args) -> int:
    params = validate_params(args.mu, args.nu, args.L)
    _print_json(threshold_summary(params, args.F0, args.F1))
    return 0


def _cmd_certificate(args) -> int:
    params = validate_params(args.mu, args.nu, args.L)
    _print_json(certificate_summary(params, args.F0, args.F1))
    return 0


def _cmd_suite(args) -> int:
    checks = run_suite(args.preset, out_root=args.out)
    for check in checks:
        print(f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.detail}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} assertions passed")
    return 0 if failed == 0 else 1


def _cmd_convergence(args) -> int:
    if args.levels < 2:
        print("convergence study needs --levels >= 2", file=sys.stderr)
        return 1
    base = load_config(args.config)
    levels = []
    reports = []
    for k in range(args.levels):
        n = (base.grid.n - 1) * 2**k + 1  # doubles dx resolution exactly
        config = dataclasses.replace(
            base,
            grid=dataclasses.replace(base.grid, n=n),
            output=dataclasses.replace(
                base.output, directory=f"{base.output.directory}-n{n}"
            ),
        )
        report = execute_config(config, out_dir=None if args.out is None
                                else f"{args.out}/level-n{n}")
        reports.append(report)
        levels.append({"n": n, "status": report.status, "t_detect": report.t_detect})
    doc: dict = {"levels": levels}
    if all(r.status == RunStatus.BLOWUP_DETECTED.value for r in reports):
        estimate, converged = estimate_blowup_time([r.outcome for r in reports])
        doc["t_m_estimate"] = estimate
        doc["converged"] = converged
        _print_json(doc)
        return 0
    doc["error"] = "not every level detected blow-up; no estimate"
    _print_json(doc)
    return 1


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "thresholds": _cmd_thresholds,
        "certificate": _cmd_certificate,
        "suite": _cmd_suite,
        "convergence": _cmd_convergence,
    }
    try:
        return handlers[args.command](args)
    except HyperburgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
