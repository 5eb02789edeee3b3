"""Per-device conduction and switching losses for one inverter leg.

The numeric conduction integral is the reference implementation: it averages
on-state drop times current, weighted by each device's effective duty, over
one fundamental period. Closed forms exist for the two carrier-based
references and are validated against the numeric path by audit_closed_forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .devices import DiodePhysics, SwitchPhysics, commutation_energy, on_state_voltage
from .errors import DomainError, NumericError, UnsupportedStrategyError
from .modulation import SQRT3, OperatingPoint, StrategyId, load_current, modulating_function

_MIN_SAMPLES = 360


class DeviceRole(enum.Enum):
    """Positions of one leg: outer/inner switch pairs, freewheeling and
    clamping diodes."""

    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"


SWITCH_ROLES = (DeviceRole.S1, DeviceRole.S2, DeviceRole.S3, DeviceRole.S4)
FREEWHEEL_ROLES = (DeviceRole.D1, DeviceRole.D2, DeviceRole.D3, DeviceRole.D4)
CLAMP_ROLES = (DeviceRole.D5, DeviceRole.D6)
OUTER_SWITCH_ROLES = (DeviceRole.S1, DeviceRole.S4)
INNER_SWITCH_ROLES = (DeviceRole.S2, DeviceRole.S3)


@dataclass(frozen=True)
class DeviceSet:
    """Physical devices populating the three kinds of leg positions."""

    switch: SwitchPhysics
    freewheel_diode: DiodePhysics
    clamp_diode: DiodePhysics

    def for_role(self, role: DeviceRole):
        if role in SWITCH_ROLES:
            return self.switch
        if role in FREEWHEEL_ROLES:
            return self.freewheel_diode
        return self.clamp_diode


@dataclass(frozen=True)
class LossBreakdown:
    """Average conduction and switching power of one device, in watts."""

    p_cond: float
    p_sw: float

    @property
    def total(self) -> float:
        return self.p_cond + self.p_sw


# Conduction intervals per role. The sign picks which half of the load
# current the device can carry; the duty is the fraction of the carrier
# period it conducts, as a function of the reference value: outer switches
# conduct during the active state of their own polarity, inner switches
# during everything except the opposite active state, clamping diodes during
# the zero state, and freewheeling diodes during the active state whose
# current opposes the commanded voltage.
_POS, _NEG = 1, -1
_CONDUCTION = {
    DeviceRole.S1: (_POS, lambda mf: np.maximum(mf, 0.0)),
    DeviceRole.S2: (_POS, lambda mf: 1.0 - np.maximum(-mf, 0.0)),
    DeviceRole.S3: (_NEG, lambda mf: 1.0 - np.maximum(mf, 0.0)),
    DeviceRole.S4: (_NEG, lambda mf: np.maximum(-mf, 0.0)),
    DeviceRole.D1: (_NEG, lambda mf: np.maximum(mf, 0.0)),
    DeviceRole.D2: (_NEG, lambda mf: np.maximum(mf, 0.0)),
    DeviceRole.D3: (_POS, lambda mf: np.maximum(-mf, 0.0)),
    DeviceRole.D4: (_POS, lambda mf: np.maximum(-mf, 0.0)),
    DeviceRole.D5: (_POS, lambda mf: 1.0 - np.abs(mf)),
    DeviceRole.D6: (_NEG, lambda mf: 1.0 - np.abs(mf)),
}

# Commutation windows per role: the outer pair toggles between its active
# state and the zero state while the reference is positive, the inner pair
# while it is negative. A diode collects one recovery event per carrier
# period while it is the device being commutated against, which requires it
# to carry current of the right polarity during that window.
_SWITCHING = {
    DeviceRole.S1: lambda mf, pos: mf > 0.0,
    DeviceRole.S3: lambda mf, pos: mf > 0.0,
    DeviceRole.S2: lambda mf, pos: mf < 0.0,
    DeviceRole.S4: lambda mf, pos: mf < 0.0,
    DeviceRole.D1: lambda mf, pos: (mf > 0.0) & ~pos,
    DeviceRole.D2: lambda mf, pos: (mf > 0.0) & ~pos,
    DeviceRole.D3: lambda mf, pos: (mf < 0.0) & pos,
    DeviceRole.D4: lambda mf, pos: (mf < 0.0) & pos,
    DeviceRole.D5: lambda mf, pos: (mf > 0.0) & pos,
    DeviceRole.D6: lambda mf, pos: (mf < 0.0) & ~pos,
}


def _check_role_device(role: DeviceRole, dev) -> None:
    if role in SWITCH_ROLES and not isinstance(dev, SwitchPhysics):
        raise DomainError(f"{role.value} must be populated by a switch")
    if role not in SWITCH_ROLES and not isinstance(dev, DiodePhysics):
        raise DomainError(f"{role.value} must be populated by a diode")


def _on_state_coeffs(dev):
    if isinstance(dev, SwitchPhysics):
        return dev.r_s, dev.v_ceo
    return dev.r_d, dev.v_fo


def _midpoint_grid(samples: int) -> np.ndarray:
    if samples < _MIN_SAMPLES:
        raise NumericError(
            f"angular grid of {samples} samples is too coarse for the loss integrals"
        )
    return (np.arange(samples) + 0.5) * (2.0 * math.pi / samples)


def conduction_loss_numeric(strategy, role, dev, op: OperatingPoint, samples: int = 10000) -> float:
    """Average conduction loss of one device over a fundamental period, W."""
    strategy = StrategyId.parse(strategy)
    _check_role_device(role, dev)
    theta = _midpoint_grid(samples)
    current = op.imax * np.sin(theta)
    mf = modulating_function(strategy, op.m, theta, op.phi)
    sign, duty_fn = _CONDUCTION[role]
    gate = current > 0.0 if sign == _POS else current < 0.0
    duty = np.clip(duty_fn(mf), 0.0, 1.0)
    iabs = np.abs(current)
    drop = on_state_voltage(dev, iabs)
    return float(np.mean(drop * iabs * duty * gate))


def _third_harmonic_kernels(phi: float):
    """Angular kernels of the third-harmonic reference conduction integrals.

    Obtained by integrating the duty-weighted current products over the
    conduction windows; the closed-form audit cross-checks them against the
    numeric integrator.
    """
    c, s = math.cos(phi), math.sin(phi)
    ch = math.cos(0.5 * phi)
    jr = (2.0 / 45.0) * ch**4 * (37.0 - 8.0 * c)
    jv = (6.0 * (math.pi - phi) * c + (6.0 + s * s) * s) / 12.0
    ar = (1.0 - c) ** 2 / 3.0 + (
        (1.0 - math.cos(3.0 * phi)) / 6.0
        - 0.3 * (math.cos(2.0 * phi) - math.cos(3.0 * phi))
    ) / 6.0
    cr = (s - phi * c) / 2.0 + s**3 / 12.0
    return jr, jv, ar, cr


def conduction_loss_closed_form(strategy, role, dev, op: OperatingPoint) -> float:
    """Closed-form conduction loss for the carrier-based references, W.

    Only SPWM and THIPWM have closed forms; the space-vector reference is
    piecewise and must go through conduction_loss_numeric.
    """
    strategy = StrategyId.parse(strategy)
    if strategy is StrategyId.SVPWM:
        raise UnsupportedStrategyError(
            "no closed form for the space-vector reference; use conduction_loss_numeric"
        )
    _check_role_device(role, dev)
    m, phi, imax = op.m, op.phi, op.imax
    r, v0 = _on_state_coeffs(dev)
    ri2 = r * imax * imax
    vi = v0 * imax
    base = ri2 / 4.0 + vi / math.pi
    c, s = math.cos(phi), math.sin(phi)

    # forward kernels cover the window where the reference has the device's
    # own polarity; takeover kernels cover the opposite-polarity window
    if strategy is StrategyId.SPWM:
        fwd_r = m * (1.0 + c) ** 2 / (6.0 * math.pi)
        fwd_v = m * ((math.pi - phi) * c + s) / (4.0 * math.pi)
        take_r = m * (1.0 - c) ** 2 / (6.0 * math.pi)
        take_v = m * (s - phi * c) / (4.0 * math.pi)
    else:
        k = m / (math.pi * SQRT3)
        jr, jv, ar, cr = _third_harmonic_kernels(phi)
        fwd_r, fwd_v = k * jr, k * jv
        take_r, take_v = k * ar, k * cr

    if role in OUTER_SWITCH_ROLES:
        return ri2 * fwd_r + vi * fwd_v
    if role in INNER_SWITCH_ROLES:
        return base - ri2 * take_r - vi * take_v
    if role in FREEWHEEL_ROLES:
        return ri2 * take_r + vi * take_v
    # clamping diodes get whatever of the half cycle the switches do not use
    return base - ri2 * (fwd_r + take_r) - vi * (fwd_v + take_v)


def switching_loss(role, dev, op: OperatingPoint, strategy, samples: int = 10000) -> float:
    """Average switching loss of one device, W.

    One turn-on/turn-off pair (or one recovery event for a diode) is charged
    per carrier period across the role's commutation window, at the energy of
    the sampled current magnitude of that instant.
    """
    strategy = StrategyId.parse(strategy)
    _check_role_device(role, dev)
    theta = _midpoint_grid(samples)
    mf = modulating_function(strategy, op.m, theta, op.phi)
    pos = np.sin(theta) > 0.0
    window = _SWITCHING[role](mf, pos)
    i_l = np.abs(load_current(op.m, theta + op.phi, op.phi, op.imax))
    if isinstance(dev, SwitchPhysics):
        energy = commutation_energy(dev.eon_fit, i_l) + commutation_energy(dev.eoff_fit, i_l)
    else:
        energy = commutation_energy(dev.erec_fit, i_l)
    return op.f_sw * float(np.mean(np.where(window, energy, 0.0)))


@dataclass(frozen=True)
class LossDistribution:
    """Loss breakdown of one leg plus leg and whole-bridge totals."""

    per_role: dict
    leg: LossBreakdown
    inverter: LossBreakdown


def loss_distribution(op: OperatingPoint, strategy, devices: DeviceSet,
                      samples: int = 10000) -> LossDistribution:
    """Losses for every position of one leg and the three-leg totals.

    A zero-current operating point reports zero everywhere: with no load
    there is nothing to commutate, even though the energy fits extrapolate
    to a small positive intercept at zero current.
    """
    strategy = StrategyId.parse(strategy)
    if op.imax == 0.0:
        zero = LossBreakdown(0.0, 0.0)
        return LossDistribution({role: zero for role in DeviceRole}, zero, zero)
    per_role = {}
    for role in DeviceRole:
        dev = devices.for_role(role)
        per_role[role] = LossBreakdown(
            p_cond=conduction_loss_numeric(strategy, role, dev, op, samples),
            p_sw=switching_loss(role, dev, op, strategy, samples),
        )
    leg = LossBreakdown(
        p_cond=sum(b.p_cond for b in per_role.values()),
        p_sw=sum(b.p_sw for b in per_role.values()),
    )
    inverter = LossBreakdown(3.0 * leg.p_cond, 3.0 * leg.p_sw)
    return LossDistribution(per_role, leg, inverter)


@dataclass(frozen=True)
class ClosedFormCheck:
    """One audited grid point: closed form versus the numeric reference."""

    strategy: StrategyId
    role: DeviceRole
    m: float
    phi: float
    closed_w: float
    numeric_w: float
    rel_err: float
    flagged: bool


def audit_closed_forms(devices: DeviceSet, op_template: OperatingPoint,
                       ms=(0.2, 0.5, 0.8, 1.0),
                       phis=(0.0, math.pi / 6.0, math.pi / 3.0),
                       rel_tol: float = 0.005, samples: int = 10000,
                       closed_form=conduction_loss_closed_form):
    """Compare the closed-form conduction losses against the numeric path.

    The numeric integral is authoritative: any expression drifting past
    rel_tol is flagged rather than silently trusted. A replacement
    closed_form callable may be audited in place of the shipped one.
    """
    records = []
    for strategy in (StrategyId.SPWM, StrategyId.THIPWM):
        for role in DeviceRole:
            dev = devices.for_role(role)
            for m in ms:
                for phi in phis:
                    op = replace(op_template, m=m, phi=phi)
                    closed = closed_form(strategy, role, dev, op)
                    numeric = conduction_loss_numeric(strategy, role, dev, op, samples)
                    denom = max(abs(numeric), 1e-12)
                    rel = abs(closed - numeric) / denom
                    records.append(ClosedFormCheck(
                        strategy, role, m, phi, closed, numeric, rel, rel > rel_tol,
                    ))
    return records
