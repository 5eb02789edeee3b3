"""Command line interface.

Subcommands evaluate single strategies, compare all of them, print loss
tables, run the midpoint simulator and dump the default configuration.
Reports can be written as JSON, CSV tables or plot-ready grids; whenever an
output directory is given, rendered figures are written alongside the
delimited files.

Exit codes: 0 on success, 2 on configuration errors, 3 on numeric or domain
errors.
"""

from __future__ import annotations

import argparse
import sys

from .config import MODES, default_config_text, load_config
from .dclink import RedundantStatePolicy, simulate_np_voltages
from .errors import ConfigError, NpcrelError
from .losses import DeviceRole
from .modulation import StrategyId
from .pipeline import (ReliabilityReport, compare_strategies, emit_report,
                       evaluate_strategy)

_STRATEGY_CHOICES = tuple(s.value for s in StrategyId)
_FORMAT_CHOICES = ("json", "csv", "plotdata")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="npcrel",
        description="Loss, thermal and failure-rate comparison of three-level"
                    " NPC inverter modulation strategies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_strategy: bool, strategy_required: bool = True):
        p.add_argument("--config", metavar="FILE",
                       help="TOML config merged over the built-in defaults")
        p.add_argument("--mode", choices=MODES,
                       help="override the evaluation mode of the config")
        if with_strategy:
            p.add_argument("--strategy", choices=_STRATEGY_CHOICES,
                           required=strategy_required)
        return p

    p_eval = add_common(sub.add_parser(
        "evaluate", help="evaluate one strategy end to end"), True)
    p_eval.add_argument("--format", choices=_FORMAT_CHOICES, default="json")
    p_eval.add_argument("--out", metavar="DIR",
                        help="write report files and figures here")

    p_cmp = add_common(sub.add_parser(
        "compare", help="evaluate and rank all strategies"), False)
    p_cmp.add_argument("--format", choices=_FORMAT_CHOICES, default="csv")
    p_cmp.add_argument("--out", metavar="DIR",
                       help="write report files and figures here")

    add_common(sub.add_parser(
        "losses", help="print the per-position loss table of one strategy"), True)

    p_sim = add_common(sub.add_parser(
        "simulate-dclink", help="run the midpoint voltage simulator"), True)
    p_sim.add_argument("--cycles", type=int, default=None,
                       help="fundamental cycles to simulate (>= 10)")
    p_sim.add_argument("--stride", type=int, default=1,
                       help="keep every n-th sample in the exported trace")
    p_sim.add_argument("--out", metavar="DIR", help="write the voltage trace here")

    p_dump = sub.add_parser("dump-default-config",
                            help="print the built-in configuration document")
    p_dump.add_argument("--out", metavar="FILE", help="write it to a file instead")

    return parser


def _print_strategy(report) -> None:
    print(f"strategy {report.strategy.value} (mode {report.mode}):"
          f" commanded index {report.commanded_m:g},"
          f" native index {report.native_m:.6g}")
    print(f"  {'position':<9} {'P_cond W':>10} {'P_sw W':>10} {'P_total W':>10}"
          f" {'Tj degC':>9} {'rate 1e-6/h':>12}")
    for role in DeviceRole:
        d = report.devices[role]
        print(f"  {role.value:<9} {d.loss.p_cond:>10.4f} {d.loss.p_sw:>10.4f}"
              f" {d.loss.total:>10.4f} {d.temps.t_junction:>9.2f} {d.rate:>12.4f}")
    for cap in report.capacitors:
        print(f"  {cap.cap_id:<9} applied {cap.applied.v_dc:.2f} V dc,"
              f" {cap.applied.v_ac:.2f} V ac, stress {cap.stress:.3f},"
              f" rate {cap.rate:.4f}")
    print(f"  lambda total {report.lambda_total:.4f} per 1e6 h,"
          f" MTTF {report.mttf_h:.1f} h")


def _print_comparison(report: ReliabilityReport) -> None:
    print(f"{'strategy':<9} {'lambda 1e-6/h':>14} {'MTTF h':>12} {'vs worst':>9}")
    for row in report.comparison:
        print(f"{row.strategy.value:<9} {row.lambda_total:>14.4f}"
              f" {row.mttf_h:>12.1f} {row.mttf_gain_pct:>8.2f}%")


def _emit_with_figures(report: ReliabilityReport, fmt: str, out_dir, cfg) -> None:
    if out_dir is None:
        return
    from . import plots  # deferred: pulls in matplotlib

    paths = emit_report(report, fmt, out_dir, cfg)
    paths += plots.render_figures(report, cfg, out_dir,
                                  surfaces=(fmt == "plotdata"))
    for path in paths:
        print(f"wrote {path}")


def _cmd_evaluate(args) -> int:
    cfg = load_config(args.config, mode=args.mode)
    strategy = StrategyId.parse(args.strategy)
    result = evaluate_strategy(cfg, strategy)
    _print_strategy(result)
    report = ReliabilityReport(mode=cfg.mode, strategies=[result], comparison=[])
    _emit_with_figures(report, args.format, args.out, cfg)
    return 0


def _cmd_compare(args) -> int:
    cfg = load_config(args.config, mode=args.mode)
    report = compare_strategies(cfg)
    _print_comparison(report)
    _emit_with_figures(report, args.format, args.out, cfg)
    return 0


def _cmd_losses(args) -> int:
    cfg = load_config(args.config, mode=args.mode)
    result = evaluate_strategy(cfg, StrategyId.parse(args.strategy))
    _print_strategy(result)
    return 0


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config, mode=args.mode)
    strategy = StrategyId.parse(args.strategy)
    pinned = cfg.strategies[strategy]
    cycles = args.cycles if args.cycles is not None else cfg.dclink.cycles
    result = simulate_np_voltages(
        strategy, cfg.op, (cfg.cap_spec, cfg.cap_spec),
        policy=RedundantStatePolicy(pinned.redundancy_split),
        cycles=cycles, dt=cfg.dclink.dt_s, r_bleed=cfg.dclink.r_bleed_ohm,
    )
    print(f"strategy {strategy.value}: dwell split {pinned.redundancy_split:g},"
          f" {cycles} cycles")
    print(f"  C1 mean {result.cap1.v_dc:.2f} V, ripple {result.cap1.v_ac:.3f} V rms")
    print(f"  C2 mean {result.cap2.v_dc:.2f} V, ripple {result.cap2.v_ac:.3f} V rms")
    if args.out:
        import os

        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"np_trace_{strategy.value}.txt")
        result.export_trace(path, stride=args.stride)
        print(f"wrote {path}")
    return 0


def _cmd_dump(args) -> int:
    text = default_config_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "compare": _cmd_compare,
    "losses": _cmd_losses,
    "simulate-dclink": _cmd_simulate,
    "dump-default-config": _cmd_dump,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NpcrelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
