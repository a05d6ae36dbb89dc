"""Scenario-level link studies: distance and lateral-offset sweeps,
turn-count Pareto optimization, and circle-vs-octagon comparison."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from riptsim import losses
from riptsim.circuit import (CircuitError, DriveSpec, ResonatorParams,
                             resonance_frequency, solve)
from riptsim.geometry import CoilGeometry, CoilShape, WireSpec, build_coil, \
    total_wire_length, transform_coil
from riptsim.magnetics import (DEFAULT_SETTINGS, IntegrationSettings,
                               LinkInductances, MagneticsError,
                               mutual_inductance, self_inductance)
from riptsim.results import SweepResult, SweepRow

__all__ = [
    "ParetoPoint",
    "distance_sweep",
    "lateral_offset_sweep",
    "optimize_turns",
    "pareto_front",
    "shape_comparison",
]


@dataclass(frozen=True)
class ParetoPoint:
    turns: int
    P_load: float
    efficiency: float
    coil_resistance: float
    wire_length: float

    def __post_init__(self):
        if self.turns < 1:
            raise ValueError("turns must be >= 1")


def resolve_threads(threads: int = 0) -> int:
    """0 means auto: RIPT_SIM_THREADS env var, else CPU count."""
    if threads > 0:
        return threads
    env = os.environ.get("RIPT_SIM_THREADS", "")
    if env.strip():
        n = int(env)
        if n > 0:
            return n
    return os.cpu_count() or 1


def _map_ordered(fn, items, threads):
    n = resolve_threads(threads)
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _row_for_link(x: float, link: LinkInductances, circuit: ResonatorParams,
                  drive: DriveSpec) -> SweepRow:
    try:
        sol = solve(circuit, link, drive)
    except CircuitError as exc:
        return SweepRow.invalid(x, str(exc))
    return SweepRow(x=x, mutual=link.mutual, coupling=link.coupling,
                    P_load=sol.P_load, efficiency=sol.efficiency,
                    P_in=sol.P_in)


def distance_sweep(tx_shape: CoilShape, rx_shape: CoilShape, wire: WireSpec,
                   circuit: ResonatorParams, drive: DriveSpec,
                   distances, settings: IntegrationSettings = DEFAULT_SETTINGS,
                   threads: int = 0, tx_segments: int | None = None,
                   rx_segments: int | None = None) -> SweepResult:
    """Coaxial placement: re-solve the link at each axial separation."""
    distances = [float(d) for d in distances]
    if any(d <= 0 for d in distances):
        raise ValueError("distances must be > 0")
    tx = build_coil(tx_shape, wire, tx_segments)
    rx0 = build_coil(rx_shape, wire, rx_segments)
    lp = self_inductance(tx, settings)
    ls = self_inductance(rx0, settings)

    def one(d: float) -> SweepRow:
        rx = transform_coil(rx0, translation=(0.0, 0.0, d))
        try:
            m = mutual_inductance(tx, rx, settings)
        except MagneticsError as exc:
            return SweepRow.invalid(d, str(exc))
        link = LinkInductances.from_inductances(lp, ls, m)
        return _row_for_link(d, link, circuit, drive)

    rows = _map_ordered(one, distances, threads)
    return SweepResult(independent_name="distance", unit="m", rows=rows)


def lateral_offset_sweep(tx_shape: CoilShape, rx_shape: CoilShape,
                         wire: WireSpec, circuit: ResonatorParams,
                         drive: DriveSpec, axial_distance: float, offsets,
                         settings: IntegrationSettings = DEFAULT_SETTINGS,
                         threads: int = 0, tx_segments: int | None = None,
                         rx_segments: int | None = None) -> SweepResult:
    """Receiver translated along y at a fixed axial distance."""
    offsets = [float(y) for y in offsets]
    if any(y < 0 for y in offsets):
        raise ValueError("lateral offsets must be >= 0")
    if axial_distance <= 0:
        raise ValueError("axial distance must be > 0")
    tx = build_coil(tx_shape, wire, tx_segments)
    rx0 = build_coil(rx_shape, wire, rx_segments)
    lp = self_inductance(tx, settings)
    ls = self_inductance(rx0, settings)

    def one(y: float) -> SweepRow:
        rx = transform_coil(rx0, translation=(0.0, y, axial_distance))
        try:
            m = mutual_inductance(tx, rx, settings)
        except MagneticsError as exc:
            return SweepRow.invalid(y, str(exc))
        link = LinkInductances.from_inductances(lp, ls, m)
        return _row_for_link(y, link, circuit, drive)

    rows = _map_ordered(one, offsets, threads)
    return SweepResult(independent_name="lateral_offset", unit="m", rows=rows)


def pareto_front(points: list[ParetoPoint]) -> list[ParetoPoint]:
    """Non-dominated subset under (max P_load, max efficiency, min turns)."""

    def dominates(a: ParetoPoint, b: ParetoPoint) -> bool:
        no_worse = (a.P_load >= b.P_load and a.efficiency >= b.efficiency
                    and a.turns <= b.turns)
        better = (a.P_load > b.P_load or a.efficiency > b.efficiency
                  or a.turns < b.turns)
        return no_worse and better

    return [p for p in points
            if not any(dominates(q, p) for q in points if q is not p)]


def optimize_turns(shape_family: CoilShape, wire: WireSpec,
                   circuit_template: ResonatorParams, drive: DriveSpec,
                   turns_range: tuple[int, int], axial_distance: float = 1.0,
                   resistance: losses.ResistanceModel | None = None,
                   settings: IntegrationSettings = DEFAULT_SETTINGS,
                   threads: int = 0) -> tuple[list[ParetoPoint], list[ParetoPoint]]:
    """Evaluate each turn count of the shape family; identical Tx/Rx coils.

    Compensation capacitance is recomputed per candidate (C = 1/(w^2 L))
    so every coil pair resonates at the shared drive frequency, isolating
    geometry effects from detuning.  Returns (all points, Pareto front).
    """
    lo, hi = turns_range
    if hi < lo or lo < 1:
        raise ValueError("invalid turns range")
    if hi - lo + 1 < 2 and hi != lo:
        raise ValueError("turns range must contain at least one candidate")
    if resistance is None:
        resistance = losses.ResistanceModel.fixed(circuit_template.R_primary)

    def one(turns: int) -> ParetoPoint:
        shape = replace(shape_family, turns=turns)
        tx = build_coil(shape, wire)
        rx = transform_coil(build_coil(shape, wire),
                            translation=(0.0, 0.0, axial_distance))
        l_self = self_inductance(tx, settings)
        m = mutual_inductance(tx, rx, settings)
        link = LinkInductances.from_inductances(l_self, l_self, m)
        r_coil = losses.ac_resistance(tx, drive.frequency, resistance)
        c = 1.0 / (drive.omega ** 2 * l_self)
        params = ResonatorParams(
            C_primary=c, C_secondary=c, R_primary=r_coil, R_secondary=r_coil,
            R_load=circuit_template.R_load,
            capacitor_voltage_rating=circuit_template.capacitor_voltage_rating)
        sol = solve(params, link, drive)
        return ParetoPoint(turns=turns, P_load=sol.P_load,
                           efficiency=sol.efficiency, coil_resistance=r_coil,
                           wire_length=total_wire_length(tx))

    points = _map_ordered(one, list(range(lo, hi + 1)), threads)
    return points, pareto_front(points)


def shape_comparison(aperture_diameter: float, turns: int, pitch: float,
                     wire: WireSpec, circuit_template: ResonatorParams,
                     drive: DriveSpec, axial_distance: float = 1.0,
                     resistance: losses.ResistanceModel | None = None,
                     settings: IntegrationSettings = DEFAULT_SETTINGS,
                     shapes: dict[str, CoilShape] | None = None) -> dict:
    """Circle vs inscribed octagon at equal aperture, turns and circuit.

    Each shape is retuned to resonance at the drive frequency; the two
    columns differ through the wire-length allocation of the outlines.
    ``shapes`` overrides the compared pair (name -> CoilShape).
    """
    if resistance is None:
        resistance = losses.ResistanceModel.fixed(circuit_template.R_primary)
    if shapes is None:
        shapes = {
            "circle": CoilShape.circle(aperture_diameter, turns, pitch),
            "octagon": CoilShape.octagon(aperture_diameter, turns, pitch),
        }
    report = {}
    for name, shape in shapes.items():
        tx = build_coil(shape, wire)
        rx = transform_coil(build_coil(shape, wire),
                            translation=(0.0, 0.0, axial_distance))
        l_self = self_inductance(tx, settings)
        m = mutual_inductance(tx, rx, settings)
        link = LinkInductances.from_inductances(l_self, l_self, m)
        r_coil = losses.ac_resistance(tx, drive.frequency, resistance)
        c = 1.0 / (drive.omega ** 2 * l_self)
        params = ResonatorParams(
            C_primary=c, C_secondary=c, R_primary=r_coil, R_secondary=r_coil,
            R_load=circuit_template.R_load,
            capacitor_voltage_rating=circuit_template.capacitor_voltage_rating)
        sol = solve(params, link, drive)
        report[name] = {
            "L_H": l_self,
            "M_H": m,
            "k": link.coupling,
            "R_ohm": r_coil,
            "C_F": c,
            "resonance_Hz": resonance_frequency(l_self, c),
            "wire_length_m": total_wire_length(tx),
            "P_load_W": sol.P_load,
            "efficiency": sol.efficiency,
        }
    return report
