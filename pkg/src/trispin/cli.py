"""Command line entry point.

Exit codes: 0 all gates passed, 1 usage or configuration error,
2 physics violation (complete positivity, trace/positivity gates,
oracle mismatch, integrator abort or failed pulse calibration).
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .integrator import CalibrationError, IntegrationError
from .model import CPViolationError, ModelError
from .scenario import (
    ScenarioError,
    Sweep,
    canonical_key,
    expand,
    figure_preset,
    format_value,
    parse_scenario,
    parse_values,
    preset_children,
    run_batch,
    write_index,
)

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS = 0, 1, 2

PRESETS = ("fig2a", "fig2b", "fig2c", "fig2d", "fig3b", "fig3d", "s1a", "s1b", "s2", "s3")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trispin", description="Three-qubit correlated-noise entanglement simulator")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--workers", type=int, default=1, help="parallel workers for sweeps")
        sp.add_argument("--plot", action="store_true", help="also render N123(t) as PNG")

    r = sub.add_parser("run", help="run a scenario file")
    r.add_argument("--config", required=True)
    common(r)

    f = sub.add_parser("figure", help="run a figure preset")
    f.add_argument("preset", choices=PRESETS)
    common(f)

    v = sub.add_parser("validate", help="parse and check a scenario file")
    v.add_argument("--config", required=True)

    s = sub.add_parser("sweep", help="sweep one parameter of a scenario file")
    s.add_argument("--config", required=True)
    s.add_argument("--param", required=True)
    s.add_argument("--values", required=True, help='comma list or "linspace(a, b, n)"')
    common(s)
    return p


def _execute(name, children, param, values, args) -> int:
    out = Path(args.out)
    results = run_batch(children, out, workers=args.workers)
    failed = 0
    for child, res in zip(children, results):
        rec = res.record
        status = "ok" if rec.passed else "GATE FAILURE"
        dev = rec.gates.get("oracle_dev")
        extra = f" oracle_dev={dev:.3e}" if dev is not None else ""
        if rec.calibration:
            extra += f" tau={rec.calibration['tau']:.6g} F={rec.calibration['fidelity']:.6f}"
        print(f"{child.name}: N123(t_max)={res.series.n123[-1]:.6g}{extra} [{status}] -> {rec.outputs['csv']}")
        failed += not rec.passed
    if len(children) > 1:
        print(f"index: {write_index(name, param, values, results, out)}")
    if args.plot:
        from .plotting import plot_runs

        labels = [format_value(v) for v in values] if values is not None else [c.name for c in children]
        png = plot_runs([r.series for r in results], labels, out / f"{name}.png", title=name, param=param, values=values)
        print(f"plot: {png}")
    return EXIT_PHYSICS if failed else EXIT_OK


def _cmd_run(args) -> int:
    s = parse_scenario(args.config)
    children = expand(s)
    values = list(s.sweep.values) if s.sweep else None
    return _execute(s.name, children, s.sweep.param if s.sweep else None, values, args)


def _cmd_sweep(args) -> int:
    s = parse_scenario(args.config)
    param = canonical_key(args.param)
    vals = parse_values(args.values, param)
    parent = replace(s, sweep=Sweep(param, tuple(vals)))
    return _execute(parent.name, expand(parent), param, vals, args)


def _cmd_figure(args) -> int:
    s = figure_preset(args.preset)
    children = preset_children(args.preset)
    if len(children) == len(s.sweep.values):
        values, param = list(s.sweep.values), s.sweep.param
    else:
        values, param = None, None
    return _execute(args.preset, children, param, values, args)


def _cmd_validate(args) -> int:
    s = parse_scenario(args.config)
    kids = expand(s)
    print(f"{args.config}: ok ({len(kids)} run{'s' if len(kids) != 1 else ''}, solver={s.solver}, init={s.init})")
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "figure": _cmd_figure, "validate": _cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (CPViolationError, IntegrationError, CalibrationError) as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (ScenarioError, ModelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
