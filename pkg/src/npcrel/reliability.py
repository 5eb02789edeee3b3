"""Part stress factors, failure rates, MTTF and capacitor lifetime models.

Failure rates follow the part-stress method for discrete semiconductors and
electrolytic capacitors: a base rate scaled by multiplicative stress factors.
Rates are carried in failures per million hours throughout; FIT is offered
as an output formatting option.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import ConfigError, DomainError, StressOverrangeError

# base failure rates, failures per million hours
BASE_RATES = {
    "mosfet": 0.012,
    "diode": 0.025,
    "capacitor": 0.00012,
}

# Arrhenius coefficient of the temperature factor per part type, kelvin
_PI_T_COEFF = {
    "mosfet": 1925.0,
    "diode": 3091.0,
    "capacitor": 4062.0,
}

# factors each part type multiplies into its base rate
_REQUIRED_FACTORS = {
    "mosfet": ("pi_t", "pi_a", "pi_q", "pi_e"),
    "diode": ("pi_t", "pi_s", "pi_c", "pi_q", "pi_e"),
    "capacitor": ("pi_t", "pi_cp", "pi_v", "pi_sr", "pi_q", "pi_e"),
}

# canonical part counts of a three-phase three-level bridge with a split bus
CANONICAL_COUNTS = {
    "mosfet": 12,
    "freewheeling_diode": 12,
    "clamping_diode": 6,
    "capacitor": 2,
}

BOLTZMANN_EV = 8.62e-5  # eV/K


def _known_part_type(part_type: str) -> str:
    if part_type not in BASE_RATES:
        valid = ", ".join(sorted(BASE_RATES))
        raise DomainError(f"unknown part type {part_type!r}; expected one of {valid}")
    return part_type


def pi_t(part_type: str, t_degc: float) -> float:
    """Temperature factor at junction (or hotspot) temperature t_degc."""
    _known_part_type(part_type)
    if t_degc <= -273.0:
        raise DomainError(f"temperature must be above absolute zero, got {t_degc}")
    coeff = _PI_T_COEFF[part_type]
    return math.exp(-coeff * (1.0 / (t_degc + 273.0) - 1.0 / 298.0))


def pi_s_diode(vs: float) -> float:
    """Voltage stress factor of a rectifier from its reverse-stress ratio.

    Below 30 percent of rating the factor is flat; above the rating the model
    does not apply.
    """
    if vs < 0.0:
        raise DomainError(f"stress ratio must be >= 0, got {vs}")
    if vs > 1.0:
        raise StressOverrangeError(
            f"reverse stress ratio {vs} exceeds the rated ceiling of the model"
        )
    if vs <= 0.3:
        return 0.054
    return vs**2.43


def pi_cp(capacitance_uf: float) -> float:
    """Capacitance factor of the electrolytic capacitor model."""
    if capacitance_uf <= 0.0:
        raise DomainError(f"capacitance must be positive, got {capacitance_uf}")
    return capacitance_uf**0.23


@dataclass(frozen=True)
class StressFactorSet:
    """Multiplicative stress factors of one part; unused ones stay None."""

    lambda_b: float
    pi_t: float = None
    pi_a: float = None
    pi_q: float = None
    pi_e: float = None
    pi_s: float = None
    pi_c: float = None
    pi_cp: float = None
    pi_v: float = None
    pi_sr: float = None


@dataclass(frozen=True)
class PartFailureRate:
    """Failure rate of one placed part, failures per million hours."""

    part_id: str
    part_class: str
    rate: float


def part_failure_rate(part_type: str, factors: StressFactorSet,
                      part_id: str = None, part_class: str = None) -> PartFailureRate:
    """Failure rate of one part from its base rate and stress factors.

    Every factor the part type requires must be present; a missing one is a
    configuration error naming it.
    """
    _known_part_type(part_type)
    if factors.lambda_b <= 0.0:
        raise DomainError("base failure rate must be positive")
    rate = factors.lambda_b
    for name in _REQUIRED_FACTORS[part_type]:
        value = getattr(factors, name)
        if value is None:
            raise ConfigError(f"missing stress factor {name} for part type {part_type}")
        if value <= 0.0:
            raise DomainError(f"stress factor {name} must be positive, got {value}")
        rate *= value
    return PartFailureRate(
        part_id=part_id or part_type,
        part_class=part_class or part_type,
        rate=rate,
    )


def inverter_failure_rate(parts) -> float:
    """Total failure rate of the bridge as the series sum of its parts.

    The canonical population is 12 switches, 12 freewheeling diodes, 6
    clamping diodes and 2 bus capacitors; any other census still sums but is
    reported as a warning.
    """
    parts = list(parts)
    if not parts:
        raise DomainError("cannot total an empty part list")
    counts = {}
    for part in parts:
        counts[part.part_class] = counts.get(part.part_class, 0) + 1
    if counts != CANONICAL_COUNTS:
        warnings.warn(
            f"non-canonical part census {counts}; expected {CANONICAL_COUNTS}",
            stacklevel=2,
        )
    return float(sum(p.rate for p in parts))


def mttf(lambda_total: float) -> float:
    """Mean time to failure in hours for a total rate in failures per 1e6 h."""
    if lambda_total <= 0.0:
        raise DomainError(f"total failure rate must be positive, got {lambda_total}")
    return 1e6 / lambda_total


def to_fit(rate: float) -> float:
    """Convert failures per million hours to failures per billion hours."""
    return rate * 1e3


def contribution_shares(parts) -> dict:
    """Percentage contribution of each part class to the total rate."""
    parts = list(parts)
    if not parts:
        raise DomainError("cannot share out an empty part list")
    total = sum(p.rate for p in parts)
    if total <= 0.0:
        raise DomainError("total failure rate must be positive")
    shares = {}
    for part in parts:
        shares[part.part_class] = shares.get(part.part_class, 0.0) + part.rate
    return {cls: 100.0 * rate / total for cls, rate in sorted(shares.items())}


LIFETIME_LAWS = ("arrhenius_power", "ten_degree_doubling", "three_regime")


@dataclass(frozen=True)
class LifetimeConstants:
    """Constants of the capacitor lifetime laws.

    l0 is the rated life in hours at reference voltage v0 (volts) and
    reference temperature t0_k (kelvin). The activation energy ea_ev and the
    voltage exponent n drive the arrhenius_power law; ten_degree_doubling
    replaces the thermal term with a doubling per 10 K below reference. The
    three_regime law additionally needs the ripple-sensitivity constants a0,
    a1, ea0_ev and the regime thresholds xi_low/xi_high; they have no
    defaults, so that law stays disabled until explicitly configured.
    """

    l0: float
    v0: float
    t0_k: float
    n: float = 0.0
    ea_ev: float = 0.0
    a0: float = None
    a1: float = None
    ea0_ev: float = None
    xi_low: float = None
    xi_high: float = None

    def __post_init__(self) -> None:
        if self.l0 <= 0.0 or self.v0 <= 0.0 or self.t0_k <= 0.0:
            raise DomainError("reference life, voltage and temperature must be positive")


def capacitor_lifetime(model: str, v: float, t_k: float, xi: float = None,
                       constants: LifetimeConstants = None) -> float:
    """Capacitor lifetime in hours under operating voltage v and temperature t_k.

    model picks the lifetime law: arrhenius_power, ten_degree_doubling or
    three_regime (the last one needs xi, the ripple-current ratio). Constants
    must be supplied explicitly; no law is active by default.
    """
    if model not in LIFETIME_LAWS:
        raise DomainError(
            f"unknown lifetime law {model!r}; expected one of {', '.join(LIFETIME_LAWS)}"
        )
    if constants is None:
        raise ConfigError("capacitor lifetime constants are not configured")
    if v <= 0.0:
        raise DomainError(f"operating voltage must be positive, got {v}")
    if t_k <= 0.0:
        raise DomainError(f"temperature must be positive kelvin, got {t_k}")
    k = constants
    thermal = math.exp((k.ea_ev / BOLTZMANN_EV) * (1.0 / t_k - 1.0 / k.t0_k))
    if model == "arrhenius_power":
        return k.l0 * (v / k.v0) ** (-k.n) * thermal
    if model == "ten_degree_doubling":
        return k.l0 * (v / k.v0) ** (-k.n) * 2.0 ** ((k.t0_k - t_k) / 10.0)
    needed = ("a0", "a1", "ea0_ev", "xi_low", "xi_high")
    missing = [name for name in needed if getattr(k, name) is None]
    if missing:
        raise ConfigError(
            "three_regime law is not configured; missing " + ", ".join(missing)
        )
    if xi is None:
        raise ConfigError("three_regime law needs the ripple ratio xi")
    if xi < k.xi_low:
        return k.l0 * (v / k.v0) * thermal
    if xi < k.xi_high:
        return k.l0 * (v / k.v0) ** (-k.n) * thermal
    ea_eff = k.ea0_ev - xi * k.a0
    return math.exp(k.a1 * (k.v0 - v)) * math.exp(
        (ea_eff / BOLTZMANN_EV) * (1.0 / t_k - 1.0 / k.t0_k)
    )
