"""Configuration-driven entry point.

``riptsim scenario.cfg --output-dir out/`` parses the scenario, runs the
requested study, and writes ``<study>.csv`` plus ``summary.txt``.  Output
files are written atomically (temp-then-rename) and nothing is written on
any error path.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from riptsim import charging, circuit, config, design, losses, validation
from riptsim.circuit import DriveSpec, ResonatorParams, capacitor_voltage_stress
from riptsim.geometry import build_coil, transform_coil
from riptsim.magnetics import DEFAULT_SETTINGS, link_inductances
from riptsim.results import SweepResult, format_number

__all__ = ["main", "run"]


class CliError(Exception):
    pass


def _resolve_esr(cfg: config.ScenarioConfig):
    """Per-side ESR values and the resistance model behind them."""
    circ = cfg.circuit
    if circ.esr_model == "fixed":
        model = losses.ResistanceModel.fixed(circ.R_primary)
        return circ.R_primary, circ.R_secondary, model
    model = (losses.ResistanceModel.dc_only() if circ.esr_model == "dc"
             else losses.ResistanceModel.skin_effect())
    tx = build_coil(cfg.coil_tx.shape, cfg.wire, cfg.coil_tx.segments_per_turn)
    rx = build_coil(cfg.coil_rx.shape, cfg.wire, cfg.coil_rx.segments_per_turn)
    rp = losses.ac_resistance(tx, cfg.drive.frequency, model)
    rs = losses.ac_resistance(rx, cfg.drive.frequency, model)
    if circ.R_primary is not None:
        rp = circ.R_primary
    if circ.R_secondary is not None:
        rs = circ.R_secondary
    return rp, rs, model


def _resonator_params(cfg: config.ScenarioConfig) -> ResonatorParams:
    rp, rs, _ = _resolve_esr(cfg)
    return ResonatorParams(
        C_primary=cfg.circuit.C_primary, C_secondary=cfg.circuit.C_secondary,
        R_primary=rp, R_secondary=rs, R_load=cfg.circuit.R_load,
        capacitor_voltage_rating=cfg.circuit.capacitor_rating)


def _study_param(cfg, key, default=None, required=False):
    value = cfg.study.get(key, default)
    if value is None and required:
        raise CliError(f"section [study]: kind {cfg.study.kind!r} requires "
                       f"key {key!r}")
    return value


def _sweep_lines(result: SweepResult) -> list[str]:
    lines = [f"sweep over {result.independent_name} [{result.unit}]: "
             f"{len(result.rows)} rows"]
    for key, value in result.extras.items():
        lines.append(f"{key} = {value}")
    invalid = [r for r in result.rows if not r.valid]
    if invalid:
        lines.append(f"flagged rows: {len(invalid)}")
    return lines


def _run_solve(cfg, threads):
    params = _resonator_params(cfg)
    dist = _study_param(cfg, "axial_distance", required=True)
    tx = build_coil(cfg.coil_tx.shape, cfg.wire, cfg.coil_tx.segments_per_turn)
    rx = transform_coil(
        build_coil(cfg.coil_rx.shape, cfg.wire, cfg.coil_rx.segments_per_turn),
        translation=(0.0, 0.0, dist))
    link = link_inductances(tx, rx, DEFAULT_SETTINGS)
    sol = circuit.solve(params, link, cfg.drive)
    stress = capacitor_voltage_stress(params, sol, cfg.drive.omega)
    csv_lines = ["axial_distance_m,Lp_H,Ls_H,mutual_H,coupling,P_load_W,"
                 "P_in_W,efficiency",
                 ",".join(format_number(v) for v in (
                     dist, link.L_primary, link.L_secondary, link.mutual,
                     link.coupling, sol.P_load, sol.P_in, sol.efficiency))]
    summary = [
        f"study: solve at {cfg.drive.frequency} Hz, axial distance {dist} m",
        f"Lp = {link.L_primary:.6e} H, Ls = {link.L_secondary:.6e} H",
        f"M = {link.mutual:.6e} H, k = {link.coupling:.6e}",
        f"Ip = {sol.I_primary:.6e} A, Is = {sol.I_secondary:.6e} A",
        f"V_load = {abs(sol.V_load):.6f} V rms",
        f"P_load = {sol.P_load:.4f} W, P_in = {sol.P_in:.4f} W, "
        f"efficiency = {sol.efficiency:.4f}",
        f"capacitor stress: Vcp = {stress['V_C_primary']:.1f} V rms, "
        f"Vcs = {stress['V_C_secondary']:.1f} V rms",
    ]
    for side in ("primary", "secondary"):
        if stress[f"{side}_exceeds_rating"]:
            summary.append(f"WARNING: {side} capacitor voltage exceeds the "
                           f"{params.capacitor_voltage_rating:.0f} V rating")
    return "\n".join(csv_lines) + "\n", summary


def _run_freq_sweep(cfg, threads):
    params = _resonator_params(cfg)
    dist = _study_param(cfg, "axial_distance", required=True)
    tx = build_coil(cfg.coil_tx.shape, cfg.wire, cfg.coil_tx.segments_per_turn)
    rx = transform_coil(
        build_coil(cfg.coil_rx.shape, cfg.wire, cfg.coil_rx.segments_per_turn),
        translation=(0.0, 0.0, dist))
    link = link_inductances(tx, rx, DEFAULT_SETTINGS)
    result = circuit.frequency_sweep(
        params, link, cfg.drive.V_source,
        (_study_param(cfg, "f_min", required=True),
         _study_param(cfg, "f_max", required=True)),
        _study_param(cfg, "points", required=True))
    return result.to_csv(), _sweep_lines(result)


def _run_distance_sweep(cfg, threads):
    params = _resonator_params(cfg)
    result = design.distance_sweep(
        cfg.coil_tx.shape, cfg.coil_rx.shape, cfg.wire, params, cfg.drive,
        _study_param(cfg, "distances", required=True),
        threads=threads, tx_segments=cfg.coil_tx.segments_per_turn,
        rx_segments=cfg.coil_rx.segments_per_turn)
    return result.to_csv(), _sweep_lines(result)


def _run_offset_sweep(cfg, threads):
    params = _resonator_params(cfg)
    result = design.lateral_offset_sweep(
        cfg.coil_tx.shape, cfg.coil_rx.shape, cfg.wire, params, cfg.drive,
        _study_param(cfg, "axial_distance", required=True),
        _study_param(cfg, "offsets", required=True),
        threads=threads, tx_segments=cfg.coil_tx.segments_per_turn,
        rx_segments=cfg.coil_rx.segments_per_turn)
    return result.to_csv(), _sweep_lines(result)


def _run_optimize_turns(cfg, threads):
    params = _resonator_params(cfg)
    _, _, model = _resolve_esr(cfg)
    points, front = design.optimize_turns(
        cfg.coil_tx.shape, cfg.wire, params, cfg.drive,
        (_study_param(cfg, "turns_min", required=True),
         _study_param(cfg, "turns_max", required=True)),
        axial_distance=_study_param(cfg, "axial_distance", 1.0),
        resistance=model, threads=threads)
    front_turns = {p.turns for p in front}
    lines = ["turns,P_load_W,efficiency,coil_resistance_ohm,wire_length_m,"
             "on_pareto_front"]
    for p in points:
        lines.append(",".join([
            str(p.turns), format_number(p.P_load), format_number(p.efficiency),
            format_number(p.coil_resistance), format_number(p.wire_length),
            "1" if p.turns in front_turns else "0"]))
    summary = [f"optimize_turns over {points[0].turns}..{points[-1].turns}",
               "Pareto front (max P_load, max efficiency, min turns): "
               + ", ".join(str(p.turns) for p in front)]
    return "\n".join(lines) + "\n", summary


def _run_shape_compare(cfg, threads):
    params = _resonator_params(cfg)
    _, _, model = _resolve_esr(cfg)
    shape = cfg.coil_tx.shape
    report = design.shape_comparison(
        shape.aperture_diameter, shape.turns, shape.pitch, cfg.wire, params,
        cfg.drive, axial_distance=_study_param(cfg, "axial_distance", 1.0),
        resistance=model)
    cols = list(next(iter(report.values())).keys())
    lines = ["shape," + ",".join(cols)]
    for name, row in report.items():
        lines.append(name + "," + ",".join(format_number(row[c]) for c in cols))
    summary = ["shape comparison (circle vs inscribed octagon)"]
    for name, row in report.items():
        summary.append(f"{name}: L = {row['L_H']:.4e} H, M = {row['M_H']:.4e} H, "
                       f"R = {row['R_ohm']:.4f} ohm, "
                       f"P_load = {row['P_load_W']:.2f} W, "
                       f"efficiency = {row['efficiency']:.4f}")
    return "\n".join(lines) + "\n", summary


def _run_charge(cfg, threads):
    pack = charging.BatteryPack(
        nominal_voltage=_study_param(cfg, "pack_voltage", required=True),
        capacity=_study_param(cfg, "capacity", required=True),
        series_count=_study_param(cfg, "series_count", 1),
        initial_soc=_study_param(cfg, "initial_soc", 0.0),
        charge_efficiency=_study_param(cfg, "charge_efficiency", 0.85))
    power = _study_param(cfg, "delivered_power", required=True)
    seconds, trace = charging.charge_time(pack, power)
    lines = ["time_s,soc"]
    for t, soc in trace:
        lines.append(f"{format_number(t)},{format_number(soc)}")
    implied = charging.implied_initial_soc(pack, power, 300.0)
    summary = [
        f"charge: {pack.series_count} x ({pack.nominal_voltage} V, "
        f"{pack.capacity} Ah) at {power} W delivered",
        f"time to full charge from SOC {pack.initial_soc}: {seconds:.1f} s",
        "note: a 5-minute observed full charge at this power implies an "
        f"initial SOC of {implied:.2f} (inference, not asserted; per-side "
        "ESR in bundled scenarios is a fit to reported efficiency, not a "
        "measurement)",
    ]
    return "\n".join(lines) + "\n", summary


_STUDIES = {
    "solve": _run_solve,
    "freq_sweep": _run_freq_sweep,
    "distance_sweep": _run_distance_sweep,
    "offset_sweep": _run_offset_sweep,
    "optimize_turns": _run_optimize_turns,
    "shape_compare": _run_shape_compare,
    "charge": _run_charge,
}


def _atomic_write(path: str, content: str):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(config_path: str, output_dir: str = ".", validate: bool = False,
        threads: int = 0, seed: int | None = None,
        stream=sys.stdout) -> int:
    """Execute a scenario; returns the process exit status."""
    try:
        cfg = config.parse_scenario(config_path)
    except config.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if validate:
        checks = validation.run_reference_checks()
        all_pass = True
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            all_pass &= c.passed
            note = f"  ({c.note})" if c.note else ""
            print(f"[{status}] {c.name}: {c.value:.6g} "
                  f"(band {c.low:.6g} .. {c.high:.6g}){note}", file=stream)
        print("validation " + ("PASSED" if all_pass else "FAILED"), file=stream)
        return 0 if all_pass else 1

    kind = cfg.study.kind
    try:
        csv_text, summary_lines = _STUDIES[kind](cfg, threads)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if not os.path.isdir(output_dir):
        try:
            os.makedirs(output_dir, exist_ok=True)
        except OSError as exc:
            print(f"error: cannot create output dir {output_dir}: {exc}",
                  file=sys.stderr)
            return 1

    summary = "\n".join(
        [f"scenario: {os.path.basename(str(config_path))}",
         f"study: {kind}"] + summary_lines) + "\n"
    _atomic_write(os.path.join(output_dir, f"{kind}.csv"), csv_text)
    _atomic_write(os.path.join(output_dir, "summary.txt"), summary)
    print(summary, end="", file=stream)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="riptsim",
        description="Resonant inductive power transfer link simulator")
    parser.add_argument("config", help="scenario file to run")
    parser.add_argument("--output-dir", default=".",
                        help="directory for CSV and summary outputs")
    parser.add_argument("--validate", action="store_true",
                        help="run the reference-design checks and report "
                             "pass/fail per check")
    parser.add_argument("--threads", type=int, default=0,
                        help="worker threads for sweeps (0 = auto, "
                             "RIPT_SIM_THREADS env fallback)")
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved for future stochastic studies")
    args = parser.parse_args(argv)
    return run(args.config, output_dir=args.output_dir,
               validate=args.validate, threads=args.threads, seed=args.seed)


if __name__ == "__main__":
    sys.exit(main())
