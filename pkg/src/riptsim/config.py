"""Scenario file parsing: line-oriented ``key = value`` under ``[section]``
headers, SI quantities with explicit unit suffixes (``1nF``, ``63.15uH``,
``1m``).  Parsing is strict: unknown sections or keys are errors, and
every diagnostic carries the line number."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from riptsim.circuit import DriveSpec
from riptsim.geometry import CoilShape, WireSpec

__all__ = ["ScenarioConfig", "ConfigError", "parse_scenario",
           "parse_scenario_text", "serialize_scenario", "parse_quantity"]


class ConfigError(ValueError):
    pass


_PREFIXES = {
    "p": 1e-12, "n": 1e-9, "u": 1e-6, "µ": 1e-6,
    "m": 1e-3, "c": 1e-2, "k": 1e3, "M": 1e6, "G": 1e9,
}

_NUMBER_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(.*)$")


def parse_quantity(text: str, unit: str) -> float:
    """Parse ``<number>[<prefix>]<unit>``; a bare number means base SI."""
    m = _NUMBER_RE.match(text.strip())
    if not m:
        raise ConfigError(f"cannot parse quantity {text!r}")
    value = float(m.group(1))
    suffix = m.group(2).strip()
    if suffix == "" or suffix == unit:
        return value
    if suffix.endswith(unit) and suffix[:-len(unit)] in _PREFIXES:
        return value * _PREFIXES[suffix[:-len(unit)]]
    raise ConfigError(f"quantity {text!r} does not carry unit {unit!r}")


def _parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as exc:
        raise ConfigError(f"expected integer, got {text!r}") from exc


def _parse_list(text: str, unit: str) -> tuple[float, ...]:
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    if not items:
        raise ConfigError("expected a comma-separated list of quantities")
    return tuple(parse_quantity(t, unit) for t in items)


@dataclass(frozen=True)
class CoilSection:
    shape: CoilShape
    segments_per_turn: int | None = None


@dataclass(frozen=True)
class CircuitSection:
    C_primary: float
    C_secondary: float
    R_load: float
    R_primary: float | None = None
    R_secondary: float | None = None
    esr_model: str = "fixed"  # fixed | dc | skin
    capacitor_rating: float = 0.0


@dataclass(frozen=True)
class StudySection:
    kind: str
    params: tuple = ()  # sorted (key, value) pairs, hashable & order-free

    def get(self, key, default=None):
        return dict(self.params).get(key, default)


@dataclass(frozen=True)
class ScenarioConfig:
    coil_tx: CoilSection
    coil_rx: CoilSection
    wire: WireSpec
    circuit: CircuitSection
    drive: DriveSpec
    study: StudySection
    drive_v_dc: float | None = None  # retained for serialization fidelity


# key schema: section -> key -> (kind, unit)
#   kind: quantity | int | word | list
_SHAPE_KEYS = {
    "shape": ("word", None),
    "n_sides": ("int", None),
    "aperture": ("quantity", "m"),
    "turns": ("int", None),
    "pitch": ("quantity", "m"),
    "segments_per_turn": ("int", None),
}

_SCHEMA = {
    "coil_tx": _SHAPE_KEYS,
    "coil_rx": _SHAPE_KEYS,
    "wire": {
        "radius": ("quantity", "m"),
        "resistivity": ("quantity", "ohm.m"),
        "strands": ("int", None),
    },
    "circuit": {
        "C_primary": ("quantity", "F"),
        "C_secondary": ("quantity", "F"),
        "R_primary": ("quantity", "ohm"),
        "R_secondary": ("quantity", "ohm"),
        "R_load": ("quantity", "ohm"),
        "esr_model": ("word", None),
        "capacitor_rating": ("quantity", "V"),
    },
    "drive": {
        "v_dc": ("quantity", "V"),
        "v_source": ("quantity", "V"),
        "frequency": ("quantity", "Hz"),
    },
    "study": {
        "kind": ("word", None),
        "axial_distance": ("quantity", "m"),
        "distances": ("list", "m"),
        "offsets": ("list", "m"),
        "f_min": ("quantity", "Hz"),
        "f_max": ("quantity", "Hz"),
        "points": ("int", None),
        "turns_min": ("int", None),
        "turns_max": ("int", None),
        "pack_voltage": ("quantity", "V"),
        "capacity": ("quantity", "Ah"),
        "series_count": ("int", None),
        "initial_soc": ("quantity", ""),
        "charge_efficiency": ("quantity", ""),
        "delivered_power": ("quantity", "W"),
    },
}

_STUDY_KINDS = {"solve", "freq_sweep", "distance_sweep", "offset_sweep",
                "optimize_turns", "shape_compare", "charge"}


def _raw_parse(text: str) -> dict[str, dict[str, tuple[int, str]]]:
    """Sections -> key -> (line number, raw value), with strict checks."""
    sections: dict[str, dict[str, tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{name}]")
            if name in sections:
                raise ConfigError(f"line {lineno}: duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any section")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SCHEMA[current]:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} in section [{current}]")
        if key in sections[current]:
            raise ConfigError(
                f"line {lineno}: duplicate key {key!r} in section [{current}]")
        sections[current][key] = (lineno, value)
    return sections


class _Section:
    def __init__(self, name: str, raw: dict[str, tuple[int, str]]):
        self.name = name
        self.raw = raw
        self.schema = _SCHEMA[name]

    def _convert(self, key: str, lineno: int, value: str):
        kind, unit = self.schema[key]
        try:
            if kind == "quantity":
                return parse_quantity(value, unit or "")
            if kind == "int":
                return _parse_int(value)
            if kind == "list":
                return _parse_list(value, unit or "")
            return value
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: key {key!r}: {exc}") from exc

    def get(self, key: str, default=None, required: bool = False):
        if key not in self.raw:
            if required:
                raise ConfigError(
                    f"section [{self.name}] is missing required key {key!r}")
            return default
        lineno, value = self.raw[key]
        return self._convert(key, lineno, value)

    def keys(self):
        return self.raw.keys()


def _build_coil_section(sec: _Section) -> CoilSection:
    shape_word = sec.get("shape", required=True)
    aperture = sec.get("aperture", required=True)
    turns = sec.get("turns", required=True)
    pitch = sec.get("pitch", 0.0)
    if shape_word == "circle":
        shape = CoilShape.circle(aperture, turns, pitch)
    elif shape_word == "octagon":
        shape = CoilShape.octagon(aperture, turns, pitch)
    elif shape_word == "polygon":
        shape = CoilShape.polygon(sec.get("n_sides", required=True),
                                  aperture, turns, pitch)
    else:
        raise ConfigError(f"section [{sec.name}]: unknown shape {shape_word!r}")
    return CoilSection(shape=shape, segments_per_turn=sec.get("segments_per_turn"))


def parse_scenario_text(text: str) -> ScenarioConfig:
    raw = _raw_parse(text)
    for required in ("coil_tx", "coil_rx", "wire", "circuit", "drive", "study"):
        if required not in raw:
            raise ConfigError(f"missing required section [{required}]")

    coil_tx = _build_coil_section(_Section("coil_tx", raw["coil_tx"]))
    coil_rx = _build_coil_section(_Section("coil_rx", raw["coil_rx"]))

    wire_sec = _Section("wire", raw["wire"])
    wire = WireSpec(
        cross_section_radius=wire_sec.get("radius", required=True),
        resistivity=wire_sec.get("resistivity", 1.68e-8),
        litz_strand_count=wire_sec.get("strands", 1),
    )

    circ = _Section("circuit", raw["circuit"])
    esr_model = circ.get("esr_model", "fixed")
    if esr_model not in ("fixed", "dc", "skin"):
        raise ConfigError(f"section [circuit]: unknown esr_model {esr_model!r}")
    circuit = CircuitSection(
        C_primary=circ.get("C_primary", required=True),
        C_secondary=circ.get("C_secondary", required=True),
        R_load=circ.get("R_load", required=True),
        R_primary=circ.get("R_primary"),
        R_secondary=circ.get("R_secondary"),
        esr_model=esr_model,
        capacitor_rating=circ.get("capacitor_rating", 0.0),
    )
    if esr_model == "fixed" and (circuit.R_primary is None
                                 or circuit.R_secondary is None):
        raise ConfigError(
            "section [circuit]: esr_model 'fixed' requires R_primary and "
            "R_secondary")

    drv = _Section("drive", raw["drive"])
    frequency = drv.get("frequency", required=True)
    v_dc = drv.get("v_dc")
    v_source = drv.get("v_source")
    if (v_dc is None) == (v_source is None):
        raise ConfigError(
            "section [drive]: specify exactly one of v_dc or v_source")
    if v_dc is not None:
        drive = DriveSpec.from_dc_supply(v_dc, frequency)
    else:
        drive = DriveSpec(v_source, frequency)

    study_sec = _Section("study", raw["study"])
    kind = study_sec.get("kind", required=True)
    if kind not in _STUDY_KINDS:
        raise ConfigError(f"section [study]: unknown study kind {kind!r}")
    params = {k: study_sec.get(k) for k in study_sec.keys() if k != "kind"}
    study = StudySection(kind=kind, params=tuple(sorted(params.items())))

    return ScenarioConfig(coil_tx=coil_tx, coil_rx=coil_rx, wire=wire,
                          circuit=circuit, drive=drive, study=study,
                          drive_v_dc=v_dc)


def parse_scenario(path) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario_text(text)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(repr(float(v)) for v in value)
    return str(value)


def serialize_scenario(cfg: ScenarioConfig) -> str:
    """Emit the config in base SI units; parses back to an equal config."""
    lines = []
    for name, section in (("coil_tx", cfg.coil_tx), ("coil_rx", cfg.coil_rx)):
        shape = section.shape
        lines.append(f"[{name}]")
        if shape.is_circle:
            lines.append("shape = circle")
        elif shape.n_sides == 8:
            lines.append("shape = octagon")
        else:
            lines.append("shape = polygon")
            lines.append(f"n_sides = {shape.n_sides}")
        lines.append(f"aperture = {_fmt(shape.aperture_diameter)}")
        lines.append(f"turns = {shape.turns}")
        lines.append(f"pitch = {_fmt(shape.pitch)}")
        if section.segments_per_turn is not None:
            lines.append(f"segments_per_turn = {section.segments_per_turn}")
        lines.append("")
    lines += [
        "[wire]",
        f"radius = {_fmt(cfg.wire.cross_section_radius)}",
        f"resistivity = {_fmt(cfg.wire.resistivity)}",
        f"strands = {cfg.wire.litz_strand_count}",
        "",
        "[circuit]",
        f"C_primary = {_fmt(cfg.circuit.C_primary)}",
        f"C_secondary = {_fmt(cfg.circuit.C_secondary)}",
    ]
    if cfg.circuit.R_primary is not None:
        lines.append(f"R_primary = {_fmt(cfg.circuit.R_primary)}")
    if cfg.circuit.R_secondary is not None:
        lines.append(f"R_secondary = {_fmt(cfg.circuit.R_secondary)}")
    lines += [
        f"R_load = {_fmt(cfg.circuit.R_load)}",
        f"esr_model = {cfg.circuit.esr_model}",
        f"capacitor_rating = {_fmt(cfg.circuit.capacitor_rating)}",
        "",
        "[drive]",
    ]
    if cfg.drive_v_dc is not None:
        lines.append(f"v_dc = {_fmt(cfg.drive_v_dc)}")
    else:
        lines.append(f"v_source = {_fmt(cfg.drive.V_source)}")
    lines.append(f"frequency = {_fmt(cfg.drive.frequency)}")
    lines += ["", "[study]", f"kind = {cfg.study.kind}"]
    for key, value in cfg.study.params:
        lines.append(f"{key} = {_fmt(value)}")
    return "\n".join(lines) + "\n"
