"""Steady-state junction temperatures from average losses.

The thermal chain is the series resistance path junction to case to ambient;
the case-to-ambient leg is either a single free-air resistance or a
case-to-heatsink plus heatsink-to-ambient pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class ThermalPath:
    """Thermal resistances of one package, in degrees Celsius per watt.

    Give either the free-air case-to-ambient resistance r_ca or the heatsink
    pair (r_ch, r_ha), never both.
    """

    r_jc: float
    r_ca: float = None
    r_ch: float = None
    r_ha: float = None

    def __post_init__(self) -> None:
        if self.r_jc <= 0.0:
            raise DomainError("junction-to-case resistance must be positive")
        free_air = self.r_ca is not None
        heatsink = self.r_ch is not None or self.r_ha is not None
        if free_air and heatsink:
            raise DomainError("give either r_ca or the (r_ch, r_ha) pair, not both")
        if free_air:
            if self.r_ca <= 0.0:
                raise DomainError("case-to-ambient resistance must be positive")
        else:
            if self.r_ch is None or self.r_ha is None:
                raise DomainError("heatsink mounting needs both r_ch and r_ha")
            if self.r_ch <= 0.0 or self.r_ha <= 0.0:
                raise DomainError("heatsink resistances must be positive")

    @property
    def r_case_to_ambient(self) -> float:
        if self.r_ca is not None:
            return self.r_ca
        return self.r_ch + self.r_ha


@dataclass(frozen=True)
class TemperaturePair:
    """Case and junction temperatures, degrees Celsius."""

    t_case: float
    t_junction: float


def junction_temperature(p_loss: float, ta: float, path: ThermalPath) -> TemperaturePair:
    """Steady-state case and junction temperatures for an average loss, W.

    Zero loss returns the ambient temperature on both nodes.
    """
    if p_loss < 0.0:
        raise DomainError(f"average loss must be >= 0, got {p_loss}")
    t_case = ta + p_loss * path.r_case_to_ambient
    return TemperaturePair(t_case=t_case, t_junction=t_case + p_loss * path.r_jc)
