"""First-order constant-power battery charging estimates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["BatteryPack", "charge_time", "implied_initial_soc"]


class ChargingError(ValueError):
    pass


@dataclass(frozen=True)
class BatteryPack:
    """Series string of identical cells/batteries, bulk-charge model only."""

    nominal_voltage: float  # volts per series element
    capacity: float  # amp-hours per element
    series_count: int = 1
    initial_soc: float = 0.0
    charge_efficiency: float = 0.85

    def __post_init__(self):
        if self.nominal_voltage <= 0:
            raise ChargingError("nominal_voltage must be > 0")
        if self.capacity <= 0:
            raise ChargingError("capacity must be > 0")
        if self.series_count < 1:
            raise ChargingError("series_count must be >= 1")
        if not 0.0 <= self.initial_soc <= 1.0:
            raise ChargingError("initial_soc must lie in [0, 1]")
        if not 0.0 < self.charge_efficiency <= 1.0:
            raise ChargingError("charge_efficiency must lie in (0, 1]")

    @property
    def total_energy_J(self) -> float:
        return self.series_count * self.nominal_voltage * self.capacity * 3600.0


def charge_time(pack: BatteryPack, delivered_power: float):
    """Seconds to full charge at constant delivered power, plus SOC trace.

    t = (1 - initial_soc) * E_total / (P * charge_efficiency); the trace
    is sampled at 1 s and always ends exactly at (t, 1.0).
    """
    if delivered_power <= 0:
        raise ChargingError("delivered_power must be > 0")
    energy_needed = (1.0 - pack.initial_soc) * pack.total_energy_J
    t_full = energy_needed / (delivered_power * pack.charge_efficiency)
    if t_full == 0.0:
        trace = np.array([[0.0, 1.0]])
        return 0.0, trace
    times = np.arange(0.0, t_full, 1.0)
    soc = pack.initial_soc + (1.0 - pack.initial_soc) * times / t_full
    times = np.append(times, t_full)
    soc = np.append(soc, 1.0)
    return float(t_full), np.column_stack([times, soc])


def implied_initial_soc(pack: BatteryPack, delivered_power: float,
                        observed_seconds: float) -> float:
    """Initial SOC implied by an observed full-charge duration.

    Reported as an inference (clipped to [0, 1]); used to interpret field
    observations where the starting charge state was not recorded.
    """
    if delivered_power <= 0 or observed_seconds < 0:
        raise ChargingError("power must be > 0 and time >= 0")
    frac = observed_seconds * delivered_power * pack.charge_efficiency \
        / pack.total_energy_J
    return float(np.clip(1.0 - frac, 0.0, 1.0))
