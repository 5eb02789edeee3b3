"""Run configuration: schema, defaults, loading and dumping.

The bundled default document doubles as the regression fixture: it carries
the circuit parameters of the shipped comparison study plus the pinned
reference-mode stress inputs per strategy. User files are deep-merged over
the defaults, so a config may override single keys only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .dclink import AppliedVoltage, CapacitorSpec
from .devices import DiodePhysics, SwitchPhysics, load_device_library
from .errors import ConfigError, DomainError
from .losses import DeviceSet
from .modulation import OperatingPoint, StrategyId
from .thermal import ThermalPath

MODES = ("reference", "model")

_TOP_LEVEL_KEYS = {
    "mode", "operating_point", "devices", "thermal", "capacitors",
    "reliability", "strategies", "dclink", "report",
}


@dataclass(frozen=True)
class StrategyInputs:
    """Pinned reference-mode stress inputs and dwell policy of one strategy."""

    pi_t_outer_switch: float
    pi_t_inner_switch: float
    pi_t_freewheel_diode: float
    pi_t_clamp_diode: float
    pi_t_capacitor: float
    cap1_applied: AppliedVoltage
    cap2_applied: AppliedVoltage
    redundancy_split: float


@dataclass(frozen=True)
class FactorSettings:
    """Strategy-independent stress factors of the failure-rate models."""

    pi_a_switch: float
    pi_q_switch: float
    pi_q_diode: float
    pi_c_diode: float
    diode_vs: float
    pi_q_cap: float
    pi_sr_cap: float
    pi_e: float


@dataclass(frozen=True)
class DclinkSettings:
    r_bleed_ohm: float
    cycles: int
    dt_s: float


@dataclass(frozen=True)
class ReportSettings:
    m_points: int
    phi_points: int
    phi_max_deg: float
    samples: int


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one evaluation run."""

    mode: str
    op: OperatingPoint
    devices: DeviceSet
    thermal: dict
    cap_spec: CapacitorSpec
    cap_hotspot_degc: float
    factors: FactorSettings
    strategies: dict
    dclink: DclinkSettings
    report: ReportSettings


def default_config_text() -> str:
    """The bundled default configuration document, verbatim."""
    return resources.files("npcrel.data").joinpath("default_config.toml").read_text()


def _deep_merge(base: dict, extra: dict) -> dict:
    merged = dict(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _section(doc: dict, name: str) -> dict:
    value = doc.get(name)
    if not isinstance(value, dict):
        raise ConfigError(f"missing or malformed section [{name}]")
    return value


def _number(section: dict, key: str, where: str) -> float:
    if key not in section:
        raise ConfigError(f"missing key {key} in [{where}]")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key} in [{where}] must be a number")
    return float(value)


def _strategy_inputs(section: dict, where: str) -> StrategyInputs:
    return StrategyInputs(
        pi_t_outer_switch=_number(section, "pi_t_outer_switch", where),
        pi_t_inner_switch=_number(section, "pi_t_inner_switch", where),
        pi_t_freewheel_diode=_number(section, "pi_t_freewheel_diode", where),
        pi_t_clamp_diode=_number(section, "pi_t_clamp_diode", where),
        pi_t_capacitor=_number(section, "pi_t_capacitor", where),
        cap1_applied=AppliedVoltage(
            _number(section, "cap1_vdc_v", where), _number(section, "cap1_vac_v", where)),
        cap2_applied=AppliedVoltage(
            _number(section, "cap2_vdc_v", where), _number(section, "cap2_vac_v", where)),
        redundancy_split=_number(section, "redundancy_split", where),
    )


def _thermal_path(section: dict, where: str) -> ThermalPath:
    kwargs = {"r_jc": _number(section, "r_jc", where)}
    for key in ("r_ca", "r_ch", "r_ha"):
        if key in section:
            kwargs[key] = _number(section, key, where)
    try:
        return ThermalPath(**kwargs)
    except DomainError as exc:
        raise ConfigError(f"[{where}]: {exc}") from None


def parse_config(doc: dict) -> RunConfig:
    """Validate a merged configuration mapping into a RunConfig."""
    unknown = set(doc) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration section(s): {', '.join(sorted(unknown))}")

    mode = doc.get("mode", "reference")
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")

    op_sec = _section(doc, "operating_point")
    try:
        op = OperatingPoint(
            m=_number(op_sec, "m", "operating_point"),
            phi=math.radians(_number(op_sec, "phi_deg", "operating_point")),
            imax=_number(op_sec, "imax_a", "operating_point"),
            f_out=_number(op_sec, "f_out_hz", "operating_point"),
            f_sw=_number(op_sec, "f_sw_hz", "operating_point"),
            vdc=_number(op_sec, "vdc_v", "operating_point"),
            ta=_number(op_sec, "ta_degc", "operating_point"),
        )
    except DomainError as exc:
        raise ConfigError(f"[operating_point]: {exc}") from None

    dev_sec = _section(doc, "devices")
    library = load_device_library(dev_sec.get("library"))
    picked = {}
    for slot in ("switch", "freewheel_diode", "clamp_diode"):
        name = dev_sec.get(slot)
        if not isinstance(name, str):
            raise ConfigError(f"missing device name for {slot} in [devices]")
        if name not in library:
            raise ConfigError(
                f"unknown device {name!r} for {slot}; library has {', '.join(sorted(library))}"
            )
        picked[slot] = library[name]
    if not isinstance(picked["switch"], SwitchPhysics):
        raise ConfigError("the switch slot needs a device with kind = 'switch'")
    if not isinstance(picked["freewheel_diode"], DiodePhysics) or \
            not isinstance(picked["clamp_diode"], DiodePhysics):
        raise ConfigError("diode slots need devices with kind = 'diode'")
    devices = DeviceSet(**picked)

    thermal_sec = _section(doc, "thermal")
    thermal = {}
    for slot in ("switch", "freewheel_diode", "clamp_diode"):
        if slot not in thermal_sec:
            raise ConfigError(f"missing section [thermal.{slot}]")
        thermal[slot] = _thermal_path(thermal_sec[slot], f"thermal.{slot}")

    cap_sec = _section(doc, "capacitors")
    rel_sec = _section(doc, "reliability")
    try:
        cap_spec = CapacitorSpec(
            capacitance_uf=_number(cap_sec, "capacitance_uf", "capacitors"),
            v_rated=_number(cap_sec, "v_rated_v", "capacitors"),
            pi_q=_number(rel_sec, "pi_q_cap", "reliability"),
            pi_sr=_number(rel_sec, "pi_sr_cap", "reliability"),
        )
    except DomainError as exc:
        raise ConfigError(f"[capacitors]: {exc}") from None
    cap_hotspot = _number(cap_sec, "hotspot_degc", "capacitors")

    factors = FactorSettings(
        pi_a_switch=_number(rel_sec, "pi_a_switch", "reliability"),
        pi_q_switch=_number(rel_sec, "pi_q_switch", "reliability"),
        pi_q_diode=_number(rel_sec, "pi_q_diode", "reliability"),
        pi_c_diode=_number(rel_sec, "pi_c_diode", "reliability"),
        diode_vs=_number(rel_sec, "diode_vs", "reliability"),
        pi_q_cap=_number(rel_sec, "pi_q_cap", "reliability"),
        pi_sr_cap=_number(rel_sec, "pi_sr_cap", "reliability"),
        pi_e=_number(rel_sec, "pi_e", "reliability"),
    )

    strat_sec = _section(doc, "strategies")
    strategies = {}
    for strategy in StrategyId:
        if strategy.value not in strat_sec:
            raise ConfigError(f"missing section [strategies.{strategy.value}]")
        inputs = _strategy_inputs(strat_sec[strategy.value], f"strategies.{strategy.value}")
        if not 0.0 <= inputs.redundancy_split <= 1.0:
            raise ConfigError(
                f"[strategies.{strategy.value}]: redundancy_split must be within [0, 1]"
            )
        strategies[strategy] = inputs

    dc_sec = _section(doc, "dclink")
    dclink = DclinkSettings(
        r_bleed_ohm=_number(dc_sec, "r_bleed_ohm", "dclink"),
        cycles=int(_number(dc_sec, "cycles", "dclink")),
        dt_s=_number(dc_sec, "dt_s", "dclink"),
    )
    if dclink.cycles < 10:
        raise ConfigError("[dclink]: cycles must be at least 10")

    rep_sec = _section(doc, "report")
    report = ReportSettings(
        m_points=int(_number(rep_sec, "m_points", "report")),
        phi_points=int(_number(rep_sec, "phi_points", "report")),
        phi_max_deg=_number(rep_sec, "phi_max_deg", "report"),
        samples=int(_number(rep_sec, "samples", "report")),
    )
    if report.m_points < 2 or report.phi_points < 2:
        raise ConfigError("[report]: the loss surface needs at least a 2 x 2 grid")
    if not 0.0 < report.phi_max_deg < 180.0:
        raise ConfigError("[report]: phi_max_deg must be within (0, 180)")

    return RunConfig(
        mode=mode, op=op, devices=devices, thermal=thermal, cap_spec=cap_spec,
        cap_hotspot_degc=cap_hotspot, factors=factors, strategies=strategies,
        dclink=dclink, report=report,
    )


def load_config(path=None, mode=None) -> RunConfig:
    """Load the configuration, deep-merging an optional user file over the
    bundled defaults. mode, when given, overrides the document's mode."""
    try:
        doc = tomllib.loads(default_config_text())
    except tomllib.TOMLDecodeError as exc:  # pragma: no cover - shipped file
        raise ConfigError(f"bundled default config is invalid: {exc}") from None
    if path is not None:
        try:
            with open(path, "rb") as fh:
                user = tomllib.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid TOML: {exc}") from None
        doc = _deep_merge(doc, user)
    if mode is not None:
        doc["mode"] = mode
    return parse_config(doc)
