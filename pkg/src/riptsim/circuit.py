"""Series-series compensated two-resonator link: phasor solution, powers,
efficiency, resonance and maximum-power-transfer analysis.

Conventions: rms phasors with e^{+j omega t}; powers are real averages.
The full 2x2 impedance matrix is solved at any drive frequency; the
resonance closed forms are exposed separately (and double as oracles).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from riptsim.magnetics import LinkInductances
from riptsim.results import SweepResult, SweepRow

__all__ = [
    "ResonatorParams",
    "DriveSpec",
    "CircuitSolution",
    "resonance_frequency",
    "impedance_matrix",
    "solve",
    "efficiency_closed_form",
    "load_power_closed_form",
    "frequency_sweep",
    "rectifier_equivalent_load",
    "mptp_analysis",
    "capacitor_voltage_stress",
]

_COND_LIMIT = 1e12


class CircuitError(ValueError):
    """Raised for invalid circuit parameters or a singular impedance matrix."""


@dataclass(frozen=True)
class ResonatorParams:
    """Per-side compensation capacitance, ESR, and the AC load resistance."""

    C_primary: float
    C_secondary: float
    R_primary: float
    R_secondary: float
    R_load: float
    capacitor_voltage_rating: float = 0.0  # 0 = unrated, no stress check

    def __post_init__(self):
        if self.C_primary <= 0 or self.C_secondary <= 0:
            raise CircuitError("capacitances must be > 0")
        if self.R_primary <= 0 or self.R_secondary <= 0:
            raise CircuitError("ESR values must be > 0")
        if self.R_load < 0:
            raise CircuitError("load resistance must be >= 0")
        if self.capacitor_voltage_rating < 0:
            raise CircuitError("capacitor voltage rating must be >= 0")


@dataclass(frozen=True)
class DriveSpec:
    """RMS source phasor magnitude and drive frequency.

    ``from_dc_supply`` maps a DC rail feeding a full bridge to its
    fundamental: V_rms = V_dc * 2 sqrt(2) / pi.
    """

    V_source: float
    frequency: float

    def __post_init__(self):
        if self.frequency <= 0:
            raise CircuitError("drive frequency must be > 0")

    @classmethod
    def from_dc_supply(cls, v_dc: float, frequency: float) -> "DriveSpec":
        return cls(v_dc * 2.0 * np.sqrt(2.0) / np.pi, frequency)

    @property
    def omega(self) -> float:
        return 2.0 * np.pi * self.frequency


@dataclass(frozen=True)
class CircuitSolution:
    I_primary: complex
    I_secondary: complex
    V_load: complex
    P_load: float
    P_in: float
    efficiency: float


def resonance_frequency(L: float, C: float) -> float:
    """f = 1 / (2 pi sqrt(L C))."""
    if L <= 0 or C <= 0:
        raise CircuitError("L and C must be > 0")
    return 1.0 / (2.0 * np.pi * np.sqrt(L * C))


def impedance_matrix(p: ResonatorParams, L_primary: float, L_secondary: float,
                     mutual: float, omega: float) -> np.ndarray:
    """Full 2x2 complex Z with series L-C-R on each side, jwM coupling."""
    if omega <= 0:
        raise CircuitError("omega must be > 0")
    z11 = p.R_primary + 1j * (omega * L_primary - 1.0 / (omega * p.C_primary))
    z22 = (p.R_secondary + p.R_load
           + 1j * (omega * L_secondary - 1.0 / (omega * p.C_secondary)))
    z12 = 1j * omega * mutual
    return np.array([[z11, z12], [z12, z22]], dtype=complex)


def solve(p: ResonatorParams, link: LinkInductances, d: DriveSpec) -> CircuitSolution:
    """Solve [Ip, Is] = Z^-1 [Vp, 0] and derive powers and efficiency."""
    z = impedance_matrix(p, link.L_primary, link.L_secondary, link.mutual,
                         d.omega)
    if np.linalg.cond(z) > _COND_LIMIT:
        raise CircuitError("impedance matrix is singular at this frequency")
    ip, isec = np.linalg.solve(z, np.array([d.V_source, 0.0], dtype=complex))
    p_load = float(abs(isec) ** 2 * p.R_load)
    p_in = float((d.V_source * np.conj(ip)).real)
    eff = p_load / p_in if p_in > 0 else 0.0
    return CircuitSolution(
        I_primary=complex(ip),
        I_secondary=complex(isec),
        V_load=complex(isec * p.R_load),
        P_load=p_load,
        P_in=p_in,
        efficiency=eff,
    )


def efficiency_closed_form(p: ResonatorParams, omega_M: float) -> float:
    """Resonant efficiency: (wM)^2 R_L / ((Rs+R_L)(Rp(Rs+R_L)+(wM)^2))."""
    r2 = p.R_secondary + p.R_load
    wm2 = omega_M ** 2
    return wm2 * p.R_load / (r2 * (p.R_primary * r2 + wm2))


def load_power_closed_form(p: ResonatorParams, omega_M: float, V_p: float) -> float:
    """Resonant load power: (wM)^2 Vp^2 R_L / (Rp(Rs+R_L)+(wM)^2)^2."""
    r2 = p.R_secondary + p.R_load
    wm2 = omega_M ** 2
    return wm2 * V_p ** 2 * p.R_load / (p.R_primary * r2 + wm2) ** 2


def frequency_sweep(p: ResonatorParams, link: LinkInductances, V: float,
                    f_range: tuple[float, float], points: int) -> SweepResult:
    """Sweep the drive frequency; rows flagged invalid on solver errors."""
    f_lo, f_hi = f_range
    if f_lo <= 0 or f_hi <= 0:
        raise CircuitError("frequency range must be positive")
    if points < 2:
        raise CircuitError("frequency sweep needs at least 2 points")
    freqs = np.linspace(f_lo, f_hi, points)
    rows = []
    for f in freqs:
        try:
            sol = solve(p, link, DriveSpec(V, float(f)))
            rows.append(SweepRow(x=float(f), mutual=link.mutual,
                                 coupling=link.coupling, P_load=sol.P_load,
                                 efficiency=sol.efficiency, P_in=sol.P_in))
        except CircuitError as exc:
            rows.append(SweepRow.invalid(float(f), str(exc)))
    result = SweepResult(independent_name="frequency", unit="Hz", rows=rows)
    valid = [r for r in rows if r.valid]
    if valid:
        peak = max(valid, key=lambda r: r.efficiency)
        result.extras["peak_efficiency_frequency_Hz"] = peak.x
        result.extras["peak_efficiency"] = peak.efficiency
    return result


def rectifier_equivalent_load(R_dc: float) -> float:
    """Full-bridge fundamental mapping: R_ac = (8 / pi^2) R_dc."""
    if R_dc <= 0:
        raise CircuitError("R_dc must be > 0")
    return 8.0 / np.pi ** 2 * R_dc


def mptp_analysis(p: ResonatorParams, link: LinkInductances, omega: float,
                  V_p: float = 1.0, r_load_range: tuple[float, float] = (1e-3, 1e4),
                  points: int = 2000) -> dict:
    """Scan R_L for maximum load power at resonance and fixed source voltage.

    Returns the optimal load, the power and efficiency there, and whether
    the scan hit the upper boundary (unbounded optimum regime).
    """
    omega_M = omega * abs(link.mutual)
    loads = np.geomspace(r_load_range[0], r_load_range[1], points)
    best_rl, best_p = None, -1.0
    for rl in loads:
        pp = ResonatorParams(p.C_primary, p.C_secondary, p.R_primary,
                             p.R_secondary, float(rl))
        pw = load_power_closed_form(pp, omega_M, V_p)
        if pw > best_p:
            best_p, best_rl = pw, float(rl)
    pp = ResonatorParams(p.C_primary, p.C_secondary, p.R_primary,
                         p.R_secondary, best_rl)
    return {
        "R_L_at_max_power": best_rl,
        "P_load_at_max_power": best_p,
        "eta_at_max_power": efficiency_closed_form(pp, omega_M),
        "boundary_hit": best_rl >= loads[-2],
    }


def capacitor_voltage_stress(p: ResonatorParams, sol: CircuitSolution,
                             omega: float) -> dict:
    """Peak-rms capacitor voltages |I|/(wC) and rating-exceeded flags."""
    v_cp = abs(sol.I_primary) / (omega * p.C_primary)
    v_cs = abs(sol.I_secondary) / (omega * p.C_secondary)
    rated = p.capacitor_voltage_rating > 0
    return {
        "V_C_primary": v_cp,
        "V_C_secondary": v_cs,
        "primary_exceeds_rating": rated and v_cp > p.capacitor_voltage_rating,
        "secondary_exceeds_rating": rated and v_cs > p.capacitor_voltage_rating,
    }
