"""End-to-end evaluation: losses, temperatures, stress factors, rates, MTTF.

The comparison holds the fundamental component of the output voltage fixed
across strategies: the zero-sequence injection used by the third-harmonic
and space-vector references extends their linear range by 2/sqrt(3), so the
same commanded fundamental is reached at a native reference index scaled by
sqrt(3)/2. Every per-device function receives that native index.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, replace

import numpy as np

from .config import RunConfig
from .dclink import (AppliedVoltage, RedundantStatePolicy, pi_v,
                     simulate_np_voltages, voltage_stress)
from .errors import ConfigError, NpcrelError
from .losses import (CLAMP_ROLES, FREEWHEEL_ROLES, OUTER_SWITCH_ROLES,
                     SWITCH_ROLES, DeviceRole, LossBreakdown, LossDistribution,
                     conduction_loss_numeric, loss_distribution, switching_loss)
from .modulation import SQRT3, StrategyId
from .reliability import (BASE_RATES, PartFailureRate, StressFactorSet,
                          contribution_shares, inverter_failure_rate, mttf,
                          part_failure_rate, pi_cp, pi_s_diode, pi_t)
from .thermal import TemperaturePair, junction_temperature

LEG_NAMES = ("A", "B", "C")

_ROLE_CLASS = {}
for _role in SWITCH_ROLES:
    _ROLE_CLASS[_role] = "mosfet"
for _role in FREEWHEEL_ROLES:
    _ROLE_CLASS[_role] = "freewheeling_diode"
for _role in CLAMP_ROLES:
    _ROLE_CLASS[_role] = "clamping_diode"

_ROLE_THERMAL = {}
for _role in SWITCH_ROLES:
    _ROLE_THERMAL[_role] = "switch"
for _role in FREEWHEEL_ROLES:
    _ROLE_THERMAL[_role] = "freewheel_diode"
for _role in CLAMP_ROLES:
    _ROLE_THERMAL[_role] = "clamp_diode"


def native_index(strategy, m: float) -> float:
    """Native reference index that reaches commanded fundamental m."""
    strategy = StrategyId.parse(strategy)
    if strategy is StrategyId.SPWM:
        return m
    return m * SQRT3 / 2.0


@dataclass
class DeviceSlice:
    """Everything evaluated for one leg position of one strategy."""

    role: DeviceRole
    loss: LossBreakdown
    temps: TemperaturePair
    factors: StressFactorSet
    rate: float  # per placed device, failures per 1e6 h


@dataclass
class CapacitorSlice:
    """Everything evaluated for one bus capacitor of one strategy."""

    cap_id: str
    applied: AppliedVoltage
    stress: float
    factors: StressFactorSet
    rate: float


@dataclass
class StrategyReport:
    strategy: StrategyId
    mode: str
    commanded_m: float
    native_m: float
    devices: dict
    capacitors: list
    parts: list
    lambda_total: float
    mttf_h: float
    shares_pct: dict


@dataclass
class ComparisonRow:
    strategy: StrategyId
    lambda_total: float
    mttf_h: float
    mttf_gain_pct: float  # relative to the worst strategy


@dataclass
class ReliabilityReport:
    mode: str
    strategies: list
    comparison: list


def _mosfet_factors(cfg: RunConfig, strategy, role, temps) -> StressFactorSet:
    pinned = cfg.strategies[strategy]
    if cfg.mode == "reference":
        p_t = pinned.pi_t_outer_switch if role in OUTER_SWITCH_ROLES \
            else pinned.pi_t_inner_switch
    else:
        p_t = pi_t("mosfet", temps.t_junction)
    return StressFactorSet(
        lambda_b=BASE_RATES["mosfet"], pi_t=p_t,
        pi_a=cfg.factors.pi_a_switch, pi_q=cfg.factors.pi_q_switch,
        pi_e=cfg.factors.pi_e,
    )


def _diode_factors(cfg: RunConfig, strategy, role, temps) -> StressFactorSet:
    pinned = cfg.strategies[strategy]
    if cfg.mode == "reference":
        p_t = pinned.pi_t_freewheel_diode if role in FREEWHEEL_ROLES \
            else pinned.pi_t_clamp_diode
    else:
        p_t = pi_t("diode", temps.t_junction)
    return StressFactorSet(
        lambda_b=BASE_RATES["diode"], pi_t=p_t,
        pi_s=pi_s_diode(cfg.factors.diode_vs), pi_c=cfg.factors.pi_c_diode,
        pi_q=cfg.factors.pi_q_diode, pi_e=cfg.factors.pi_e,
    )


def _capacitor_slices(cfg: RunConfig, strategy, op_native) -> list:
    pinned = cfg.strategies[strategy]
    if cfg.mode == "reference":
        applied = (pinned.cap1_applied, pinned.cap2_applied)
    else:
        sim = simulate_np_voltages(
            strategy, op_native, (cfg.cap_spec, cfg.cap_spec),
            policy=RedundantStatePolicy(pinned.redundancy_split),
            cycles=cfg.dclink.cycles, dt=cfg.dclink.dt_s,
            r_bleed=cfg.dclink.r_bleed_ohm,
        )
        applied = (sim.cap1, sim.cap2)
    p_t = pinned.pi_t_capacitor if cfg.mode == "reference" \
        else pi_t("capacitor", cfg.cap_hotspot_degc)
    slices = []
    for cap_id, volt in zip(("C1", "C2"), applied):
        stress = voltage_stress(volt, cfg.cap_spec)
        factors = StressFactorSet(
            lambda_b=BASE_RATES["capacitor"], pi_t=p_t,
            pi_cp=pi_cp(cfg.cap_spec.capacitance_uf), pi_v=pi_v(stress),
            pi_sr=cfg.factors.pi_sr_cap, pi_q=cfg.factors.pi_q_cap,
            pi_e=cfg.factors.pi_e,
        )
        rate = part_failure_rate("capacitor", factors,
                                 part_id=cap_id, part_class="capacitor").rate
        slices.append(CapacitorSlice(cap_id, volt, stress, factors, rate))
    return slices


def evaluate_strategy(cfg: RunConfig, strategy) -> StrategyReport:
    """Evaluate one strategy end to end under the configured mode."""
    strategy = StrategyId.parse(strategy)
    m_native = native_index(strategy, cfg.op.m)
    op_native = replace(cfg.op, m=m_native)
    try:
        dist = loss_distribution(op_native, strategy, cfg.devices,
                                 samples=cfg.report.samples)
    except NpcrelError as exc:
        raise type(exc)(f"{strategy.value}: {exc}") from exc

    devices = {}
    for role in DeviceRole:
        loss = dist.per_role[role]
        path = cfg.thermal[_ROLE_THERMAL[role]]
        temps = junction_temperature(loss.total, cfg.op.ta, path)
        part_type = "mosfet" if role in SWITCH_ROLES else "diode"
        if part_type == "mosfet":
            factors = _mosfet_factors(cfg, strategy, role, temps)
        else:
            factors = _diode_factors(cfg, strategy, role, temps)
        rate = part_failure_rate(part_type, factors, part_id=role.value,
                                 part_class=_ROLE_CLASS[role]).rate
        devices[role] = DeviceSlice(role, loss, temps, factors, rate)

    capacitors = _capacitor_slices(cfg, strategy, op_native)

    parts = []
    for leg in LEG_NAMES:
        for role in DeviceRole:
            parts.append(PartFailureRate(
                part_id=f"{leg}.{role.value}",
                part_class=_ROLE_CLASS[role],
                rate=devices[role].rate,
            ))
    for cap in capacitors:
        parts.append(PartFailureRate(cap.cap_id, "capacitor", cap.rate))

    lambda_total = inverter_failure_rate(parts)
    return StrategyReport(
        strategy=strategy, mode=cfg.mode, commanded_m=cfg.op.m,
        native_m=m_native, devices=devices, capacitors=capacitors,
        parts=parts, lambda_total=lambda_total, mttf_h=mttf(lambda_total),
        shares_pct=contribution_shares(parts),
    )


def compare_strategies(cfg: RunConfig) -> ReliabilityReport:
    """Evaluate every strategy and rank them by MTTF against the worst."""
    slices = [evaluate_strategy(cfg, strategy) for strategy in StrategyId]
    worst = min(s.mttf_h for s in slices)
    rows = [
        ComparisonRow(
            strategy=s.strategy, lambda_total=s.lambda_total, mttf_h=s.mttf_h,
            mttf_gain_pct=100.0 * (s.mttf_h / worst - 1.0),
        )
        for s in slices
    ]
    return ReliabilityReport(mode=cfg.mode, strategies=slices, comparison=rows)


def loss_surface(cfg: RunConfig, strategy):
    """S1 total-loss grid over commanded index and lag angle.

    Returns (m_grid, phi_grid_deg, p_grid) with p_grid indexed [m, phi].
    """
    strategy = StrategyId.parse(strategy)
    ms = np.linspace(1.0 / cfg.report.m_points, 1.0, cfg.report.m_points)
    phis_deg = np.linspace(0.0, cfg.report.phi_max_deg, cfg.report.phi_points)
    dev = cfg.devices.switch
    grid = np.zeros((len(ms), len(phis_deg)))
    for i, m in enumerate(ms):
        native = native_index(strategy, float(m))
        for j, phi_deg in enumerate(phis_deg):
            op = replace(cfg.op, m=native, phi=math.radians(float(phi_deg)))
            p_cond = conduction_loss_numeric(strategy, DeviceRole.S1, dev, op,
                                             samples=cfg.report.samples)
            p_sw = switching_loss(DeviceRole.S1, dev, op, strategy,
                                  samples=cfg.report.samples)
            grid[i, j] = p_cond + p_sw
    return ms, phis_deg, grid


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return format(float(value), ".9g")


def _strategy_dict(s: StrategyReport) -> dict:
    return {
        "strategy": s.strategy.value,
        "mode": s.mode,
        "commanded_m": s.commanded_m,
        "native_m": s.native_m,
        "devices": {
            role.value: {
                "p_cond_w": d.loss.p_cond,
                "p_sw_w": d.loss.p_sw,
                "p_total_w": d.loss.total,
                "t_case_degc": d.temps.t_case,
                "tj_degc": d.temps.t_junction,
                "pi_t": d.factors.pi_t,
                "rate_1e-6_per_h": d.rate,
            }
            for role, d in s.devices.items()
        },
        "capacitors": {
            c.cap_id: {
                "v_dc_v": c.applied.v_dc,
                "v_ac_v": c.applied.v_ac,
                "stress_s": c.stress,
                "pi_v": c.factors.pi_v,
                "pi_t": c.factors.pi_t,
                "rate_1e-6_per_h": c.rate,
            }
            for c in s.capacitors
        },
        "lambda_1e-6_per_h": s.lambda_total,
        "mttf_h": s.mttf_h,
        "shares_pct": dict(s.shares_pct),
    }


def report_to_dict(report: ReliabilityReport) -> dict:
    return {
        "mode": report.mode,
        "strategies": [_strategy_dict(s) for s in report.strategies],
        "comparison": [
            {
                "strategy": row.strategy.value,
                "lambda_1e-6_per_h": row.lambda_total,
                "mttf_h": row.mttf_h,
                "mttf_gain_pct": row.mttf_gain_pct,
            }
            for row in report.comparison
        ],
    }


def _write_json(report: ReliabilityReport, out_dir: str) -> list:
    path = os.path.join(out_dir, "report.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return [path]


def _write_csv(report: ReliabilityReport, out_dir: str) -> list:
    paths = []
    comp_path = os.path.join(out_dir, "comparison.csv")
    with open(comp_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("strategy,lambda_1e-6_per_h,mttf_h,mttf_gain_pct\n")
        for row in report.comparison:
            fh.write(f"{row.strategy.value},{_fmt(row.lambda_total)},"
                     f"{_fmt(row.mttf_h)},{_fmt(row.mttf_gain_pct)}\n")
    paths.append(comp_path)

    rates_path = os.path.join(out_dir, "part_rates.csv")
    with open(rates_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("strategy,part_id,part_class,rate_1e-6_per_h\n")
        for s in report.strategies:
            for part in s.parts:
                fh.write(f"{s.strategy.value},{part.part_id},{part.part_class},"
                         f"{_fmt(part.rate)}\n")
    paths.append(rates_path)

    losses_path = os.path.join(out_dir, "losses.csv")
    with open(losses_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("strategy,role,p_cond_w,p_sw_w,p_total_w,t_case_degc,tj_degc\n")
        for s in report.strategies:
            for role, d in s.devices.items():
                fh.write(f"{s.strategy.value},{role.value},{_fmt(d.loss.p_cond)},"
                         f"{_fmt(d.loss.p_sw)},{_fmt(d.loss.total)},"
                         f"{_fmt(d.temps.t_case)},{_fmt(d.temps.t_junction)}\n")
    paths.append(losses_path)
    return paths


def _write_plotdata(report: ReliabilityReport, out_dir: str, cfg: RunConfig) -> list:
    paths = []
    for s in report.strategies:
        ms, phis_deg, grid = loss_surface(cfg, s.strategy)
        path = os.path.join(out_dir, f"loss_surface_{s.strategy.value}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("m,phi_deg,p_total_w\n")
            for i, m in enumerate(ms):
                for j, phi in enumerate(phis_deg):
                    fh.write(f"{_fmt(m)},{_fmt(phi)},{_fmt(grid[i, j])}\n")
        paths.append(path)

    shares_path = os.path.join(out_dir, "class_shares.csv")
    with open(shares_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("strategy,part_class,share_pct\n")
        for s in report.strategies:
            for cls, share in s.shares_pct.items():
                fh.write(f"{s.strategy.value},{cls},{_fmt(share)}\n")
    paths.append(shares_path)
    return paths


def emit_report(report: ReliabilityReport, format: str, out_dir: str,
                cfg: RunConfig = None) -> list:
    """Write the report files for one format and return the paths written.

    json is one document; csv is the comparison, part-rate and loss tables;
    plotdata is the per-strategy loss-surface grids plus the class shares
    (it needs cfg for the grid settings).
    """
    os.makedirs(out_dir, exist_ok=True)
    if format == "json":
        return _write_json(report, out_dir)
    if format == "csv":
        return _write_csv(report, out_dir)
    if format == "plotdata":
        if cfg is None:
            raise ConfigError("plotdata output needs the run configuration")
        return _write_plotdata(report, out_dir, cfg)
    raise ConfigError(f"unknown report format {format!r}; expected json, csv or plotdata")
