"""DC-link capacitor stress and a neutral-point voltage simulator.

The simulator integrates the midpoint current produced by the three phase
switching functions into the midpoint voltage of the split bus, with a
resistive balancing network across the capacitors. It is meant for
qualitative study of the midpoint behaviour per strategy; reference
evaluations normally pin the applied capacitor voltages in the config
instead of running it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import DomainError, NumericError
from .modulation import OperatingPoint, modulating_function

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CapacitorSpec:
    """Electrolytic bus capacitor: value, rating and handbook quality levels."""

    capacitance_uf: float
    v_rated: float
    pi_q: float = 10.0
    pi_sr: float = 1.0

    def __post_init__(self) -> None:
        if self.capacitance_uf <= 0.0:
            raise DomainError("capacitance must be positive")
        if self.v_rated <= 0.0:
            raise DomainError("rated voltage must be positive")
        if self.pi_q <= 0.0 or self.pi_sr <= 0.0:
            raise DomainError("quality factors must be positive")


@dataclass(frozen=True)
class AppliedVoltage:
    """Operating voltage seen by one capacitor: DC mean and AC ripple RMS."""

    v_dc: float
    v_ac: float = 0.0

    def __post_init__(self) -> None:
        if self.v_dc < 0.0 or self.v_ac < 0.0:
            raise DomainError("applied voltages must be >= 0")


def voltage_stress(applied: AppliedVoltage, spec: CapacitorSpec) -> float:
    """Operating-to-rated voltage stress ratio of the capacitor stress model.

    The ripple enters with its peak value on top of the DC component, and the
    rating is derated to 60 percent.
    """
    return (applied.v_dc + math.sqrt(2.0) * applied.v_ac) / (0.6 * spec.v_rated)


def pi_v(s: float) -> float:
    """Voltage stress factor of the capacitor failure-rate model."""
    if s < 0.0:
        raise DomainError(f"stress ratio must be >= 0, got {s}")
    return (s / 0.6) ** 5 + 1.0


@dataclass(frozen=True)
class RedundantStatePolicy:
    """Dwell split between the two redundant realizations of the zero states.

    0.5 shares them evenly; larger values favour the connection that charges
    the midpoint. The fixed split is a first-order stand-in for a dwell
    controller and is meant for qualitative comparison only.
    """

    split: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.split <= 1.0:
            raise DomainError(f"dwell split must be within [0, 1], got {self.split}")


SYMMETRIC_POLICY = RedundantStatePolicy(0.5)

_PHASE_SHIFTS = (0.0, -2.0 * math.pi / 3.0, 2.0 * math.pi / 3.0)


def neutral_point_current(strategy, op: OperatingPoint, theta,
                          policy: RedundantStatePolicy = SYMMETRIC_POLICY):
    """Midpoint-charging current at current angle(s) theta, in amperes.

    Each phase feeds the midpoint during its zero state, and an uneven dwell
    split adds a component correlated with the commanded voltage. Current
    into the midpoint is counted positive (it raises the lower capacitor).
    """
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    total = np.zeros_like(th)
    for shift in _PHASE_SHIFTS:
        i_x = op.imax * np.sin(th + shift)
        mf_x = modulating_function(strategy, op.m, th + shift, op.phi)
        total += (1.0 - np.abs(mf_x)) * i_x
        total += (2.0 * policy.split - 1.0) * mf_x * i_x
    return float(total[0]) if np.ndim(theta) == 0 else total.reshape(np.shape(theta))


@dataclass
class NpVoltageResult:
    """Traces and steady-state summary of one midpoint simulation."""

    strategy: object
    cap1: AppliedVoltage
    cap2: AppliedVoltage
    time_s: np.ndarray
    v_c1: np.ndarray
    v_c2: np.ndarray

    def export_trace(self, path, stride: int = 1) -> None:
        """Write the columnar text trace: time in s, V_C1 and V_C2 in V."""
        if stride < 1:
            raise DomainError("stride must be >= 1")
        data = np.column_stack([
            self.time_s[::stride], self.v_c1[::stride], self.v_c2[::stride],
        ])
        np.savetxt(path, data, fmt="%.9g", header="time_s v_c1_v v_c2_v")


def simulate_np_voltages(strategy, op: OperatingPoint, caps,
                         policy: RedundantStatePolicy = SYMMETRIC_POLICY,
                         cycles: int = 10, dt: float = 1e-6,
                         r_bleed: float = 470.0) -> NpVoltageResult:
    """Simulate the split-bus midpoint over whole fundamental cycles.

    caps is the (upper, lower) CapacitorSpec pair and r_bleed the balancing
    resistor across each capacitor. Steady-state summaries (mean and ripple
    RMS per capacitor) are taken over the last cycle. The upper and lower
    voltages always sum to the bus voltage; the bus itself is stiff.
    """
    if cycles < 10:
        raise DomainError("at least ten cycles are needed to settle the midpoint")
    if r_bleed <= 0.0:
        raise DomainError("balancing resistance must be positive")
    cap_up, cap_low = caps
    c_total = (cap_up.capacitance_uf + cap_low.capacitance_uf) * 1e-6
    # Thevenin view of the two balancing resistors toward Vdc/2
    tau = 0.5 * r_bleed * c_total
    period = 1.0 / op.f_out
    if dt <= 0.0 or dt > min(tau, period) / 50.0:
        raise NumericError(
            f"simulation step {dt} s is too large for the bus time constants"
        )

    steps = int(round(cycles * period / dt))
    t = np.arange(steps) * dt
    theta = _TWO_PI * op.f_out * t
    i_np = neutral_point_current(strategy, op, theta, policy)

    # exact exponential step of the linear midpoint dynamics
    # dv/dt = (Vdc/2 - v) / tau + i_np / C_total
    a = math.exp(-dt / tau)
    forcing = 0.5 * op.vdc + tau * i_np / c_total
    v_np = lfilter([1.0 - a], [1.0, -a], forcing, zi=[a * 0.5 * op.vdc])[0]

    v_c2 = v_np
    v_c1 = op.vdc - v_np
    last = slice(steps - int(round(period / dt)), steps)
    cap1 = AppliedVoltage(float(np.mean(v_c1[last])), float(np.std(v_c1[last])))
    cap2 = AppliedVoltage(float(np.mean(v_c2[last])), float(np.std(v_c2[last])))
    return NpVoltageResult(strategy=strategy, cap1=cap1, cap2=cap2,
                           time_s=t, v_c1=v_c1, v_c2=v_c2)
