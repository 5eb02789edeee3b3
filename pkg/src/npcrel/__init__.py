"""Loss, thermal and part-stress reliability comparison of modulation
strategies (SPWM, THIPWM, SVPWM) for three-phase three-level
neutral-point-clamped inverters."""

from .config import RunConfig, default_config_text, load_config
from .dclink import (AppliedVoltage, CapacitorSpec, RedundantStatePolicy,
                     neutral_point_current, pi_v, simulate_np_voltages,
                     voltage_stress)
from .devices import (DiodePhysics, EnergyFit, FitResult, SwitchPhysics,
                      commutation_energy, fit_energy_curve,
                      load_device_library, on_state_voltage)
from .errors import (ConfigError, DomainError, FitError, ModelValidityError,
                     NpcrelError, NumericError, StressOverrangeError,
                     UnsupportedStrategyError)
from .losses import (DeviceRole, DeviceSet, LossBreakdown, LossDistribution,
                     audit_closed_forms, conduction_loss_closed_form,
                     conduction_loss_numeric, loss_distribution,
                     switching_loss)
from .modulation import (DutyCycleSet, OperatingPoint, StrategyId,
                         SvpwmWaveform, duty_cycles, load_current,
                         modulating_function, svpwm_band, svpwm_region,
                         svpwm_waveform, switching_state)
from .pipeline import (ComparisonRow, ReliabilityReport, StrategyReport,
                       compare_strategies, emit_report, evaluate_strategy,
                       loss_surface, native_index, report_to_dict)
from .reliability import (BASE_RATES, LifetimeConstants, PartFailureRate,
                          StressFactorSet, capacitor_lifetime,
                          contribution_shares, inverter_failure_rate, mttf,
                          part_failure_rate, pi_cp, pi_s_diode, pi_t, to_fit)
from .thermal import TemperaturePair, ThermalPath, junction_temperature

__version__ = "0.1.0"

__all__ = [
    "AppliedVoltage", "BASE_RATES", "CapacitorSpec", "ComparisonRow",
    "ConfigError", "DeviceRole", "DeviceSet", "DiodePhysics", "DomainError",
    "DutyCycleSet", "EnergyFit", "FitError", "FitResult", "LifetimeConstants",
    "LossBreakdown", "LossDistribution", "ModelValidityError", "NpcrelError",
    "NumericError", "OperatingPoint", "PartFailureRate", "RedundantStatePolicy",
    "ReliabilityReport", "RunConfig", "StrategyId", "StrategyReport",
    "StressFactorSet", "StressOverrangeError", "SvpwmWaveform",
    "TemperaturePair", "ThermalPath", "UnsupportedStrategyError",
    "audit_closed_forms", "capacitor_lifetime", "commutation_energy",
    "compare_strategies", "conduction_loss_closed_form",
    "conduction_loss_numeric", "contribution_shares", "default_config_text",
    "duty_cycles", "emit_report", "evaluate_strategy", "fit_energy_curve",
    "inverter_failure_rate", "junction_temperature", "load_config",
    "load_current", "load_device_library", "loss_distribution",
    "loss_surface", "modulating_function", "mttf", "native_index",
    "neutral_point_current", "on_state_voltage", "part_failure_rate",
    "pi_cp", "pi_s_diode", "pi_t", "pi_v", "report_to_dict",
    "simulate_np_voltages", "svpwm_band", "svpwm_region", "svpwm_waveform",
    "switching_loss", "switching_state", "to_fit", "voltage_stress",
]
