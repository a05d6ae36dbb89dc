"""Equivalent series resistance of coil windings (DC and skin-effect AC)."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from riptsim.geometry import CoilGeometry, total_wire_length

__all__ = ["ResistanceMode", "ResistanceModel", "dc_resistance", "ac_resistance"]

MU0 = 4.0e-7 * np.pi

# below this strand-radius/skin-depth ratio the quartic low-frequency
# expansion is used; above it the linear asymptote (continuity and
# monotonicity are enforced by the max() against the plateau value)
_X_SWITCH = 1.7
_F_SWITCH = 1.0 + _X_SWITCH ** 4 / 48.0


class ResistanceMode(enum.Enum):
    DC_ONLY = "dc"
    SKIN_EFFECT = "skin"
    FIXED_OVERRIDE = "fixed"


@dataclass(frozen=True)
class ResistanceModel:
    mode: ResistanceMode = ResistanceMode.DC_ONLY
    override_ohms: float = 0.0
    temperature_coefficient: float = 0.0  # per kelvin, reserved

    def __post_init__(self):
        if self.mode is ResistanceMode.FIXED_OVERRIDE and self.override_ohms < 0:
            raise ValueError("fixed resistance override must be >= 0")

    @classmethod
    def fixed(cls, ohms: float) -> "ResistanceModel":
        return cls(ResistanceMode.FIXED_OVERRIDE, override_ohms=ohms)

    @classmethod
    def dc_only(cls) -> "ResistanceModel":
        return cls(ResistanceMode.DC_ONLY)

    @classmethod
    def skin_effect(cls) -> "ResistanceModel":
        return cls(ResistanceMode.SKIN_EFFECT)


def dc_resistance(coil: CoilGeometry) -> float:
    """R = resistivity * length / (pi * rho^2).

    For litz wire ``rho`` is the copper-equivalent bundle radius, so the
    DC value matches a solid wire of the same copper area.
    """
    wire = coil.wire
    area = np.pi * wire.cross_section_radius ** 2
    return wire.resistivity * total_wire_length(coil) / area


def skin_depth(resistivity: float, frequency: float) -> float:
    """delta = sqrt(resistivity / (pi * f * mu0)) for non-magnetic wire."""
    if frequency <= 0:
        raise ValueError("frequency must be > 0")
    return float(np.sqrt(resistivity / (np.pi * frequency * MU0)))


def _skin_factor(x: float) -> float:
    """AC/DC resistance ratio for a solid round wire, x = radius / delta.

    Piecewise approximation: 1 + x^4/48 at low x, r/(2 delta) + 0.26
    asymptote at high x, joined so the factor stays continuous and
    monotone in frequency.
    """
    if x <= _X_SWITCH:
        return 1.0 + x ** 4 / 48.0
    return max(_F_SWITCH, x / 2.0 + 0.26)


def ac_resistance(coil: CoilGeometry, frequency: float,
                  model: ResistanceModel) -> float:
    """Equivalent series resistance at the drive frequency."""
    if frequency <= 0:
        raise ValueError("frequency must be > 0")
    if model.mode is ResistanceMode.FIXED_OVERRIDE:
        return model.override_ohms
    r_dc = dc_resistance(coil)
    if model.mode is ResistanceMode.DC_ONLY:
        return r_dc
    # skin effect on the individual strand (strand radius = bundle
    # radius / sqrt(strands) for litz)
    delta = skin_depth(coil.wire.resistivity, frequency)
    return r_dc * _skin_factor(coil.wire.strand_radius / delta)
