"""Command-line entry point: ``quantum-eraser {scan,preset,gamma,check}``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .channel import InputPolarization, MziSetting, SpectralFilter, gamma, purity_closed_form
from .scan import PRESETS, ConfigError, emit_csv, fit_fringes, group_records, parse_config, run_scan
from .validation import run_all


def _load(path, preset=None):
    text = Path(path).read_text() if path else ""
    return parse_config(text, preset=preset)


def _write(records, out):
    if out in (None, "-"):
        emit_csv(records, sys.stdout)
    else:
        emit_csv(records, out)


def cmd_scan(args) -> int:
    cfg = _load(args.config)
    if args.oracle:
        cfg = replace(cfg, oracle_check=True)
    _write(run_scan(cfg), args.out)
    return 0


def cmd_preset(args) -> int:
    cfg = _load(args.config, preset=args.name)
    if args.oracle:
        cfg = replace(cfg, oracle_check=True)
    records = run_scan(cfg)
    _write(records, args.out)
    report = sys.stderr if args.out in (None, "-") else sys.stdout
    print("epsilon_I  visibility  phase_rad  rms_residual", file=report)
    for eps, group in group_records(records).items():
        fit = fit_fringes(group)
        print(f"{eps:9.4f}  {fit.visibility:10.6f}  {fit.phase:9.4f}  {fit.residual:.3e}", file=report)
    return 0


def cmd_gamma(args) -> int:
    cfg = _load(args.config)
    lam = cfg.wavelength_nm * 1e-9
    filt = SpectralFilter(lam, cfg.filter_width_nm * 1e-9, cfg.filter_width_is_fwhm)
    eps_list = args.eps if args.eps else [0, 0.25, 1, 5, 10, 20, 30, 40, 50]
    inp = InputPolarization(1 / np.sqrt(2), 1 / np.sqrt(2))
    print("epsilon_I  |gamma|       arg(gamma)  purity")
    for eps in eps_list:
        g = gamma(filt, MziSetting.from_epsilon(eps, lam))
        print(f"{eps:9.4f}  {abs(g):.6e}  {np.angle(g):+.6f}  {purity_closed_form(inp, g):.6f}")
    return 0


def cmd_check(args) -> int:
    failed = 0
    for result in run_all():
        status = "PASS" if result.passed else "FAIL"
        failed += not result.passed
        print(f"[{status}] {result.name}: {result.detail}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantum-eraser", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="run a configured detector scan and write CSV")
    p.add_argument("--config")
    p.add_argument("--out", default="-")
    p.add_argument("--oracle", action="store_true", help="spot-check every 10th point against the full-state oracle")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("preset", help="reproduce a figure's scan and print fitted visibilities")
    p.add_argument("name", choices=sorted(PRESETS))
    p.add_argument("--config")
    p.add_argument("--out", default="-")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("gamma", help="print the coherence factor and purity over eps_I")
    p.add_argument("--config")
    p.add_argument("--eps", type=float, nargs="*")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("check", help="run all oracle cross-validations")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
