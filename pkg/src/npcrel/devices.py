"""Static device characteristics and the bundled device library.

On-state behaviour is the threshold-plus-slope linearization through the
rated operating point; commutation energies are double exponentials in the
instantaneous current. The shipped library covers the IRF740 power MOSFET
(including its body diode) and the MUR1560 ultrafast rectifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy.optimize import curve_fit

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .errors import ConfigError, DomainError, FitError, ModelValidityError


@dataclass(frozen=True)
class EnergyFit:
    """Double-exponential commutation-energy model E(i) = a*e^(b*i) + c*e^(d*i).

    a and c are joules, b and d reciprocal amperes.
    """

    a: float
    b: float
    c: float
    d: float


@dataclass(frozen=True)
class SwitchPhysics:
    """Controlled switch: on-state linearization plus turn-on/turn-off fits."""

    name: str
    v_ceo: float
    r_s: float
    i_cn: float
    v_cen: float
    eon_fit: EnergyFit
    eoff_fit: EnergyFit

    def __post_init__(self) -> None:
        _check_linearization(self.name, self.v_ceo, self.r_s, self.i_cn, self.v_cen)


@dataclass(frozen=True)
class DiodePhysics:
    """Diode: forward-drop linearization plus reverse-recovery fit."""

    name: str
    v_fo: float
    r_d: float
    i_cn: float
    v_fn: float
    erec_fit: EnergyFit
    v_rev_rated: float

    def __post_init__(self) -> None:
        _check_linearization(self.name, self.v_fo, self.r_d, self.i_cn, self.v_fn)
        if self.v_rev_rated <= 0.0:
            raise DomainError(f"{self.name}: rated reverse voltage must be positive")


def _check_linearization(name, v0, slope, i_n, v_n) -> None:
    if v0 < 0.0:
        raise DomainError(f"{name}: threshold voltage must be >= 0")
    if slope < 0.0:
        raise DomainError(f"{name}: slope resistance must be >= 0")
    if i_n <= 0.0:
        raise DomainError(f"{name}: rated current must be positive")
    # the slope must run through the rated point
    expected = (v_n - v0) / i_n
    if abs(expected - slope) > 1e-6 * max(1.0, abs(slope)):
        raise DomainError(
            f"{name}: slope resistance {slope} does not match the rated point,"
            f" expected {expected:.6g}"
        )


def on_state_voltage(device, i):
    """On-state voltage drop at forward current i (amperes, >= 0), in volts."""
    arr = np.asarray(i, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("devices conduct unidirectionally; current must be >= 0")
    if isinstance(device, SwitchPhysics):
        out = device.v_ceo + device.r_s * arr
    elif isinstance(device, DiodePhysics):
        out = device.v_fo + device.r_d * arr
    else:
        raise DomainError(f"unsupported device type {type(device).__name__}")
    return float(out) if np.ndim(i) == 0 else out


def commutation_energy(fit: EnergyFit, i):
    """Commutation energy at current magnitude i, in joules."""
    arr = np.asarray(i, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("pass the magnitude of the instantaneous current")
    out = fit.a * np.exp(fit.b * arr) + fit.c * np.exp(fit.d * arr)
    if not np.all(np.isfinite(out)) or np.any(out < 0.0):
        raise ModelValidityError(
            "commutation-energy fit evaluated outside its valid current range"
        )
    return float(out) if np.ndim(i) == 0 else out


@dataclass(frozen=True)
class FitResult:
    """Outcome of fit_energy_curve: the model and its residual RMS in joules."""

    fit: EnergyFit
    rms_j: float


def _double_exp(i, a, b, c, d):
    return a * np.exp(b * i) + c * np.exp(d * i)


_SEED_RATES = (
    -0.05, -0.02, -0.008, -0.004, -0.001, -0.0003,
    0.0003, 0.001, 0.004, 0.008, 0.02, 0.05,
)


def fit_energy_curve(samples) -> FitResult:
    """Least-squares double-exponential fit of (current, energy) samples.

    Seeds are generated by solving the two linear amplitudes over a grid of
    rate pairs; the best seeds are then polished nonlinearly. Constant data
    short-circuits to the degenerate single-term fit. The dominant term is
    reported first.
    """
    pts = [(float(i), float(e)) for i, e in samples]
    if len(pts) < 4:
        raise DomainError("need at least four samples to fit four parameters")
    currents = np.array([p[0] for p in pts])
    energies = np.array([p[1] for p in pts])
    if len(np.unique(currents)) != len(currents):
        raise DomainError("sample currents must be distinct")

    scale = max(float(np.max(np.abs(energies))), 1e-30)
    if float(np.ptp(energies)) <= 1e-12 * scale:
        return FitResult(EnergyFit(float(energies[0]), 0.0, 0.0, 0.0), 0.0)

    seeds = []
    for bi, b0 in enumerate(_SEED_RATES):
        for d0 in _SEED_RATES[:bi]:
            design = np.column_stack([np.exp(b0 * currents), np.exp(d0 * currents)])
            coef, *_ = np.linalg.lstsq(design, energies, rcond=None)
            resid = design @ coef - energies
            seeds.append((float(np.sqrt(np.mean(resid**2))),
                          (float(coef[0]), b0, float(coef[1]), d0)))
    seeds.sort(key=lambda s: s[0])

    best = None
    for _, p0 in seeds[:6]:
        try:
            popt, _ = curve_fit(_double_exp, currents, energies, p0=p0,
                                maxfev=20000, xtol=1e-15, ftol=1e-15)
        except (RuntimeError, ValueError):
            continue
        resid = _double_exp(currents, *popt) - energies
        rms = float(np.sqrt(np.mean(resid**2)))
        if best is None or rms < best[0]:
            best = (rms, popt)
    if best is None:
        raise FitError(
            f"double-exponential fit did not converge on {len(pts)} samples"
            f" spanning {currents.min():g}..{currents.max():g} A"
        )
    rms, popt = best
    a, b, c, d = (float(v) for v in popt)
    if abs(a) < abs(c):
        a, b, c, d = c, d, a, b
    return FitResult(EnergyFit(a, b, c, d), rms)


def _fit_from(entry: dict, prefix: str, name: str) -> EnergyFit:
    try:
        return EnergyFit(*(float(entry[f"{prefix}_{k}"]) for k in "abcd"))
    except KeyError as exc:
        raise ConfigError(f"device {name}: missing field {exc.args[0]}") from None


def load_device_library(path=None) -> dict:
    """Load a device library document, returning a name to physics mapping.

    Without a path the bundled library ships IRF740, IRF740_body and MUR1560.
    """
    if path is None:
        text = resources.files("npcrel.data").joinpath("devices.toml").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"device library is not valid TOML: {exc}") from None

    lib = {}
    for name, entry in doc.items():
        if not isinstance(entry, dict):
            raise ConfigError(f"device {name}: expected a table of fields")
        kind = entry.get("kind")
        try:
            if kind == "switch":
                lib[name] = SwitchPhysics(
                    name=name,
                    v_ceo=float(entry["v_ceo"]),
                    r_s=float(entry["r_s"]),
                    i_cn=float(entry["i_cn"]),
                    v_cen=float(entry["v_cen"]),
                    eon_fit=_fit_from(entry, "eon", name),
                    eoff_fit=_fit_from(entry, "eoff", name),
                )
            elif kind == "diode":
                lib[name] = DiodePhysics(
                    name=name,
                    v_fo=float(entry["v_fo"]),
                    r_d=float(entry["r_d"]),
                    i_cn=float(entry["i_cn"]),
                    v_fn=float(entry["v_fn"]),
                    erec_fit=_fit_from(entry, "erec", name),
                    v_rev_rated=float(entry["v_rev_rated"]),
                )
            else:
                raise ConfigError(f"device {name}: kind must be 'switch' or 'diode'")
        except KeyError as exc:
            raise ConfigError(f"device {name}: missing field {exc.args[0]}") from None
        except DomainError as exc:
            raise ConfigError(f"device {name}: {exc}") from None
    if not lib:
        raise ConfigError("device library is empty")
    return lib
