"""Modulating references, switching states and duty cycles for a three-level leg.

Three reference generators are provided: a plain sinusoid (SPWM), a sinusoid
with one sixth of third harmonic injected (THIPWM), and a space-vector
reference (SVPWM) reconstructed piecewise from the per-region phase-voltage
expressions of the vector diagram.

Angle convention used consistently by the loss integrals: the load current is
the sine reference,

    i(theta) = Imax * sin(theta)

and the modulating voltage leads the current by the lag angle phi, so every
reference is evaluated at (theta + phi). The positive half of the current
cycle is theta in (0, pi).
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SQRT3 = math.sqrt(3.0)

_TWO_PI = 2.0 * math.pi
_THIRD = math.pi / 3.0
_EDGE_TOL = 1e-12


class StrategyId(enum.Enum):
    """Closed set of supported modulation strategies."""

    SPWM = "spwm"
    THIPWM = "thipwm"
    SVPWM = "svpwm"

    @classmethod
    def parse(cls, name) -> "StrategyId":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise DomainError(
                f"unknown strategy {name!r}; expected one of {valid}"
            ) from None


@dataclass(frozen=True)
class OperatingPoint:
    """Electrical and ambient state for one evaluation.

    m is the commanded modulation index in (0, 1], phi the current lag angle
    in radians within [0, pi), imax the peak load current in amperes (zero is
    accepted for no-load studies), f_out and f_sw the fundamental and carrier
    frequencies in hertz, vdc the bus voltage in volts and ta the ambient
    temperature in degrees Celsius.
    """

    m: float
    phi: float
    imax: float
    f_out: float
    f_sw: float
    vdc: float
    ta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"modulation index must be in (0, 1], got {self.m}")
        if not 0.0 <= self.phi < math.pi:
            raise DomainError(f"lag angle must be in [0, pi), got {self.phi}")
        if self.imax < 0.0:
            raise DomainError(f"peak current must be >= 0, got {self.imax}")
        if self.f_out <= 0.0 or self.f_sw <= 0.0:
            raise DomainError("frequencies must be positive")
        if self.f_sw < 10.0 * self.f_out:
            raise DomainError("carrier frequency must be at least ten times the fundamental")
        if self.vdc <= 0.0:
            raise DomainError(f"bus voltage must be positive, got {self.vdc}")
        if self.ta <= -273.0:
            raise DomainError(f"ambient temperature must be above absolute zero, got {self.ta}")


# Gate pattern per leg state. States 1, 2 and 3 put the leg output at +Vdc/2,
# 0 and -Vdc/2; the pairs (S1, S3) and (S2, S4) are driven complementarily so
# one leg can never short the bus.
_GATES = {
    1: (True, True, False, False),
    2: (False, True, True, False),
    3: (False, False, True, True),
}


@dataclass(frozen=True)
class SwitchingState:
    """One leg state together with its gate drive vector (S1, S2, S3, S4)."""

    state: int
    gates: tuple

    def output_voltage(self, vdc: float) -> float:
        return {1: 0.5 * vdc, 2: 0.0, 3: -0.5 * vdc}[self.state]


def switching_state(state: int) -> SwitchingState:
    """Gate vector for leg state 1, 2 or 3."""
    if state not in _GATES:
        raise DomainError(f"leg state must be 1, 2 or 3, got {state!r}")
    return SwitchingState(state, _GATES[state])


@dataclass(frozen=True)
class DutyCycleSet:
    """Per-carrier-period duty cycles of the leg states for one reference value.

    dt_p and dt_n are the positive and negative active-state duties; dt_zp and
    dt_zn are the zero-state duties on the positive and negative reference
    half. Exactly one of each pair is nonzero away from the zero crossing.
    """

    dt_p: object
    dt_zp: object
    dt_zn: object
    dt_n: object


def duty_cycles(mf):
    """Duty cycles of the three leg states at reference value mf.

    Accepts scalars or arrays; values with magnitude above 1 would mean
    overmodulation and are rejected.
    """
    arr = np.asarray(mf, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-9):
        raise DomainError("reference magnitude above 1 is overmodulation and is not supported")
    dt_p = np.maximum(arr, 0.0)
    dt_n = np.maximum(-arr, 0.0)
    pos = arr >= 0.0
    dt_zp = np.where(pos, 1.0 - arr, 0.0)
    dt_zn = np.where(pos, 0.0, 1.0 + arr)
    if np.ndim(mf) == 0:
        return DutyCycleSet(float(dt_p), float(dt_zp), float(dt_zn), float(dt_n))
    return DutyCycleSet(dt_p, dt_zp, dt_zn, dt_n)


def load_current(m, theta, phi, imax):
    """Current sample used for commutation-energy lookup, in amperes.

    theta is measured on the modulating-voltage reference and the current
    lags it by phi. The amplitude scales with the modulation index, matching
    the sampled-current model used for switching energies; the conduction
    integrals use the full load amplitude instead and apply the index through
    the duty cycles.
    """
    if not 0.0 < m <= 1.0:
        raise DomainError(f"modulation index must be in (0, 1], got {m}")
    if imax < 0.0:
        raise DomainError(f"peak current must be >= 0, got {imax}")
    out = m * imax * np.sin(np.asarray(theta, dtype=float) - phi)
    return float(out) if np.ndim(theta) == 0 else out


def modulating_function(strategy, m, theta, phi=0.0):
    """Normalized reference voltage at current angle theta.

    The reference leads the current by phi, so it is evaluated at
    (theta + phi). SPWM and THIPWM are closed form; SVPWM evaluates the
    piecewise waveform reconstruction.
    """
    strategy = StrategyId.parse(strategy)
    if not 0.0 < m <= 1.0:
        raise DomainError(f"modulation index must be in (0, 1], got {m}")
    ang = np.asarray(theta, dtype=float) + phi
    if strategy is StrategyId.SPWM:
        out = m * np.sin(ang)
    elif strategy is StrategyId.THIPWM:
        out = (2.0 * m / SQRT3) * (np.sin(ang) + np.sin(3.0 * ang) / 6.0)
    else:
        out = svpwm_waveform(m).value(ang)
    return float(out) if np.ndim(theta) == 0 else out


# ===========================================================================
# Space-vector reference reconstruction
# ===========================================================================
#
# The reference vector sweeps a 120 degree excursion, alpha in [-60, +60]
# degrees around the phase axis, while the phase voltage covers the central
# part of its positive half cycle (theta = alpha + 90 degrees). Outside the
# excursion the waveform continues on the hexagon-edge amplitude m/sqrt(3)
# down to its zero crossings, and the negative half cycle is the point
# mirror of the positive one.
#
# Within the excursion the expression is piecewise per diagram region. The
# band edges 0.5 and 1/sqrt(3) split the index range by how the reference
# circle crosses the inner hexagon (inradius 0.5, circumradius 1/sqrt(3));
# the crossing half-angle arccos(0.5 / m) fixes the extra region boundaries
# inside the middle and upper bands.

BAND_EDGE_LOW = 0.5
BAND_EDGE_MID = 1.0 / SQRT3


def svpwm_band(m) -> int:
    """Index band (1, 2 or 3) of the vector diagram for index m."""
    if not 0.0 < m <= 1.0:
        raise DomainError(f"modulation index must be in (0, 1], got {m}")
    if m <= BAND_EDGE_LOW:
        return 1
    if m <= BAND_EDGE_MID:
        return 2
    return 3


def _region_bounds(m: float) -> np.ndarray:
    """Excursion-angle boundaries of the diagram regions, in radians."""
    band = svpwm_band(m)
    if band == 1:
        return np.array([-_THIRD, -_THIRD / 2.0, 0.0, _THIRD / 2.0, _THIRD])
    cross = math.acos(0.5 / m)
    t0 = _THIRD / 2.0 - cross if band == 2 else cross - _THIRD / 2.0
    t0 = max(t0, 0.0)
    return np.array([
        -_THIRD, -_THIRD + t0, -_THIRD / 2.0, -t0, 0.0,
        t0, _THIRD / 2.0, _THIRD - t0, _THIRD,
    ])


@dataclass(frozen=True)
class _SegmentSpec:
    """Shape of one region expression before phase resolution.

    full_amp selects the full reference amplitude m over the hexagon-edge
    amplitude m/sqrt(3); anchor marks regions whose expression is the plain
    m*cos(alpha) on the global excursion angle, which pins the phase of the
    neighbouring chained segments.
    """

    full_amp: bool
    offset: float
    anchor: bool


_SPECS = {
    1: (
        _SegmentSpec(False, 0.00, False),
        _SegmentSpec(True, 0.00, True),
        _SegmentSpec(False, 0.00, False),
        _SegmentSpec(False, 0.00, False),
    ),
    2: (
        _SegmentSpec(False, 0.00, False),
        _SegmentSpec(True, -0.25, False),
        _SegmentSpec(False, 0.25, False),
        _SegmentSpec(True, 0.00, True),
        _SegmentSpec(False, 0.00, False),
        _SegmentSpec(False, 0.25, False),
        _SegmentSpec(False, -0.25, False),
        _SegmentSpec(False, 0.00, False),
    ),
    3: (
        _SegmentSpec(False, 0.00, False),
        _SegmentSpec(True, -0.25, False),
        _SegmentSpec(False, 0.25, False),
        _SegmentSpec(False, 0.00, False),
        _SegmentSpec(True, 0.00, True),
        _SegmentSpec(False, 0.25, False),
        _SegmentSpec(False, -0.25, False),
        _SegmentSpec(True, 0.00, True),
    ),
}


def svpwm_region(m, alpha) -> int:
    """Diagram region (1-based) holding excursion angle alpha for index m.

    alpha is measured from the phase axis and must stay within the 120
    degree excursion. Every angle maps to exactly one region; degenerate
    zero-width regions at the band edges are never returned.
    """
    band = svpwm_band(m)
    a = float(alpha)
    if a < -_THIRD - 1e-9 or a > _THIRD + 1e-9:
        raise DomainError(f"angle {a} is outside the 120 degree excursion")
    bounds = _region_bounds(m)
    idx = int(np.searchsorted(bounds, a, side="left")) - 1
    idx = min(max(idx, 0), len(bounds) - 2)
    # never report a zero-width region: fall back to the nearest real one
    while bounds[idx + 1] - bounds[idx] <= _EDGE_TOL and idx > 0:
        idx -= 1
    return idx + 1


class SvpwmWaveform:
    """Piecewise reconstruction of the space-vector phase reference.

    Region expressions share two amplitudes (m and m/sqrt(3)) and small
    constant offsets but the diagram leaves their phases only loosely tied
    to the excursion angle. The reconstruction resolves each phase by
    chaining: every non-anchored segment starts at the value its neighbour
    towards the nearest zero crossing ends with, while anchored segments
    evaluate m*cos(alpha) directly and reset the chain. With that rule the
    waveform is continuous everywhere except possibly at the peak-facing
    anchor edges, which boundary_jumps reports.
    """

    def __init__(self, m: float):
        if not 0.0 < m <= 1.0:
            raise DomainError(f"modulation index must be in (0, 1], got {m}")
        self.m = float(m)
        self.band = svpwm_band(m)
        self._bounds = _region_bounds(m)
        self._specs = _SPECS[self.band]
        n = len(self._specs)
        hex_amp = self.m / SQRT3
        self._amps = np.array([self.m if s.full_amp else hex_amp for s in self._specs])
        self._offs = np.array([s.offset for s in self._specs])
        self._alo = self._bounds[:-1]
        self._xlo = np.zeros(n)
        self._resolve_phases()

    def _resolve_phases(self) -> None:
        bounds, specs = self._bounds, self._specs
        n = len(specs)
        # value where the hexagon-edge extension meets the excursion edge
        edge_value = (self.m / SQRT3) * math.cos(_THIRD)

        # rising side (alpha <= 0): chain left to right from the extension
        target = edge_value
        for i in range(n):
            if bounds[i + 1] > _EDGE_TOL:
                break
            width = bounds[i + 1] - bounds[i]
            if specs[i].anchor:
                self._xlo[i] = bounds[i]
                target = self.m * math.cos(bounds[i + 1])
                continue
            if width <= _EDGE_TOL:
                continue
            ratio = (target - self._offs[i]) / self._amps[i]
            if abs(ratio) > 1.0:
                x_lo = -width  # entry value unreachable: end on the crest
            else:
                x_lo = -math.acos(ratio)
            self._xlo[i] = x_lo
            target = self._amps[i] * math.cos(x_lo + width) + self._offs[i]

        # falling side (alpha >= 0): chain right to left from the extension
        target = edge_value
        for i in reversed(range(n)):
            if bounds[i] < -_EDGE_TOL:
                break
            width = bounds[i + 1] - bounds[i]
            if specs[i].anchor:
                self._xlo[i] = bounds[i]
                target = self.m * math.cos(bounds[i])
                continue
            if width <= _EDGE_TOL:
                continue
            ratio = (target - self._offs[i]) / self._amps[i]
            if abs(ratio) > 1.0:
                x_hi = width  # exit value unreachable: start on the crest
            else:
                x_hi = math.acos(ratio)
            self._xlo[i] = x_hi - width
            target = self._amps[i] * math.cos(self._xlo[i]) + self._offs[i]

    def _excursion(self, alpha: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._bounds, alpha, side="left") - 1
        idx = np.clip(idx, 0, len(self._amps) - 1)
        x = self._xlo[idx] + (alpha - self._alo[idx])
        return self._amps[idx] * np.cos(x) + self._offs[idx]

    def _half_cycle(self, t: np.ndarray) -> np.ndarray:
        # t in [0, pi); outside the excursion the waveform rides the
        # hexagon-edge amplitude down to its zero crossings
        w = (self.m / SQRT3) * np.sin(t)
        alpha = t - 0.5 * math.pi
        inside = np.abs(alpha) <= _THIRD
        if np.any(inside):
            w = w.copy()
            w[inside] = self._excursion(alpha[inside])
        return w

    def value(self, theta):
        """Reference value at voltage angle theta (scalar or array)."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        t = np.mod(th, _TWO_PI)
        neg = t >= math.pi
        half = np.where(neg, t - math.pi, t)
        out = np.where(neg, -1.0, 1.0) * self._half_cycle(half)
        return float(out[0]) if np.ndim(theta) == 0 else out.reshape(np.shape(theta))

    def _pieces(self):
        """Non-degenerate pieces of the half cycle as (t_lo, t_hi, fn)."""
        hex_amp = self.m / SQRT3
        pieces = [(0.0, math.pi / 6.0, lambda t: hex_amp * math.sin(t))]
        for i in range(len(self._amps)):
            lo, hi = self._bounds[i], self._bounds[i + 1]
            if hi - lo <= _EDGE_TOL:
                continue
            amp, off, xlo, alo = self._amps[i], self._offs[i], self._xlo[i], self._bounds[i]
            pieces.append((
                lo + 0.5 * math.pi,
                hi + 0.5 * math.pi,
                lambda t, amp=amp, off=off, xlo=xlo, alo=alo:
                    amp * math.cos(xlo + (t - 0.5 * math.pi) - alo) + off,
            ))
        pieces.append((5.0 * math.pi / 6.0, math.pi, lambda t: hex_amp * math.sin(t)))
        return pieces

    def boundary_jumps(self, tol: float = 1e-9):
        """Discontinuities of the reconstructed half wave at its seams.

        Chained segments are continuous by construction; anchored segments
        keep the diagram's own phase, so a structural step can remain at
        their peak-facing edge. Returns (theta, jump magnitude) pairs for
        every seam whose step exceeds tol.
        """
        pieces = self._pieces()
        jumps = []
        for (_, hi, left_fn), (lo, _, right_fn) in zip(pieces, pieces[1:]):
            seam = 0.5 * (hi + lo)
            step = abs(right_fn(seam) - left_fn(seam))
            if step > tol:
                jumps.append((seam, step))
        return jumps


@functools.lru_cache(maxsize=128)
def svpwm_waveform(m: float) -> SvpwmWaveform:
    """Cached waveform reconstruction for index m."""
    return SvpwmWaveform(m)
