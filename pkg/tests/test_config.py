import importlib.resources

import numpy as np
import pytest

from riptsim.config import (ConfigError, parse_quantity, parse_scenario,
                            parse_scenario_text, serialize_scenario)

MINIMAL = """\
[coil_tx]
shape = circle
aperture = 1m
turns = 5
pitch = 1cm

[coil_rx]
shape = circle
aperture = 1m
turns = 5
pitch = 1cm

[wire]
radius = 0.75mm

[circuit]
C_primary = 1nF
C_secondary = 1nF
R_primary = 0.55ohm
R_secondary = 0.55ohm
R_load = 10ohm

[drive]
v_dc = 43V
frequency = 615kHz

[study]
kind = solve
axial_distance = 1m
"""


def bundled_scenario_text():
    ref = importlib.resources.files("riptsim") / "scenarios" / "reference_link.scenario"
    return ref.read_text(encoding="utf-8")


class TestParseQuantity:
    @pytest.mark.parametrize("text,unit,expected", [
        ("1nF", "F", 1e-9),
        ("63.15uH", "H", 63.15e-6),
        ("0.75mm", "m", 0.75e-3),
        ("1cm", "m", 0.01),
        ("615kHz", "Hz", 615e3),
        ("2.5MHz", "Hz", 2.5e6),
        ("43V", "V", 43.0),
        ("1.68e-8", "ohm.m", 1.68e-8),
        ("10ohm", "ohm", 10.0),
        ("0.85", "", 0.85),
        ("-3mm", "m", -3e-3),
    ])
    def test_accepted_forms(self, text, unit, expected):
        assert parse_quantity(text, unit) == pytest.approx(expected, rel=1e-12)

    def test_micro_sign_alias(self):
        assert parse_quantity("63.15µH", "H") == pytest.approx(63.15e-6)

    def test_wrong_unit_rejected(self):
        with pytest.raises(ConfigError):
            parse_quantity("1nF", "H")

    def test_unknown_prefix_rejected(self):
        with pytest.raises(ConfigError):
            parse_quantity("1qF", "F")

    def test_garbage_rejected(self):
        with pytest.raises(ConfigError):
            parse_quantity("fast", "m")


class TestParseScenario:
    def test_bundled_reference_scenario(self):
        cfg = parse_scenario_text(bundled_scenario_text())
        assert cfg.coil_tx.shape.n_sides == 8
        assert cfg.coil_tx.shape.aperture_diameter == 1.0
        assert cfg.coil_tx.shape.turns == 5
        assert cfg.coil_tx.shape.pitch == pytest.approx(0.01)
        assert cfg.wire.cross_section_radius == pytest.approx(0.75e-3)
        assert cfg.circuit.C_primary == pytest.approx(1e-9)
        assert cfg.circuit.R_load == 10.0
        assert cfg.circuit.capacitor_rating == 2500.0
        assert cfg.drive.frequency == pytest.approx(615e3)
        # inverter fundamental of the 43 V rail
        assert cfg.drive.V_source == pytest.approx(43 * 2 * np.sqrt(2) / np.pi)
        assert cfg.study.kind == "solve"
        assert cfg.study.get("axial_distance") == pytest.approx(1.0)

    def test_parse_scenario_from_path(self, tmp_path):
        p = tmp_path / "case.scenario"
        p.write_text(MINIMAL, encoding="utf-8")
        assert parse_scenario(p) == parse_scenario_text(MINIMAL)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            parse_scenario(tmp_path / "absent.scenario")

    def test_round_trip_serialization(self):
        cfg = parse_scenario_text(bundled_scenario_text())
        assert parse_scenario_text(serialize_scenario(cfg)) == cfg

    def test_round_trip_with_v_source_and_lists(self):
        text = MINIMAL.replace("v_dc = 43V", "v_source = 38.7V").replace(
            "kind = solve\naxial_distance = 1m",
            "kind = distance_sweep\ndistances = 0.5m, 1m, 2m")
        cfg = parse_scenario_text(text)
        assert cfg.study.get("distances") == (0.5, 1.0, 2.0)
        assert parse_scenario_text(serialize_scenario(cfg)) == cfg


class TestStrictness:
    def test_unknown_section_reports_line(self):
        text = MINIMAL + "\n[turbo]\n"
        lineno = text.rstrip("\n").count("\n") + 1
        with pytest.raises(ConfigError,
                           match=rf"line {lineno}: unknown section"):
            parse_scenario_text(text)

    def test_unknown_key_reports_line_and_section(self):
        text = MINIMAL.replace("radius = 0.75mm",
                               "radius = 0.75mm\ncolor = red")
        with pytest.raises(ConfigError,
                           match=r"line 15: unknown key 'color'.*\[wire\]"):
            parse_scenario_text(text)

    def test_duplicate_key_rejected(self):
        text = MINIMAL.replace("turns = 5\npitch = 1cm\n\n[coil_rx]",
                               "turns = 5\nturns = 6\npitch = 1cm\n\n[coil_rx]")
        with pytest.raises(ConfigError, match="duplicate key 'turns'"):
            parse_scenario_text(text)

    def test_key_before_any_section(self):
        with pytest.raises(ConfigError, match="line 1: key outside"):
            parse_scenario_text("turns = 5\n" + MINIMAL)

    def test_malformed_line(self):
        text = MINIMAL.replace("radius = 0.75mm", "radius 0.75mm")
        with pytest.raises(ConfigError, match="expected 'key = value'"):
            parse_scenario_text(text)

    def test_bad_quantity_reports_key(self):
        text = MINIMAL.replace("C_primary = 1nF", "C_primary = 1nH")
        with pytest.raises(ConfigError, match="'C_primary'"):
            parse_scenario_text(text)

    def test_missing_section(self):
        text = MINIMAL.replace("[drive]\nv_dc = 43V\nfrequency = 615kHz\n", "")
        with pytest.raises(ConfigError, match=r"missing required section"):
            parse_scenario_text(text)

    def test_drive_requires_exactly_one_source(self):
        both = MINIMAL.replace("v_dc = 43V", "v_dc = 43V\nv_source = 38.7V")
        with pytest.raises(ConfigError, match="exactly one"):
            parse_scenario_text(both)
        neither = MINIMAL.replace("v_dc = 43V\n", "")
        with pytest.raises(ConfigError, match="exactly one"):
            parse_scenario_text(neither)

    def test_fixed_esr_requires_resistances(self):
        text = MINIMAL.replace("R_primary = 0.55ohm\nR_secondary = 0.55ohm\n",
                               "")
        with pytest.raises(ConfigError, match="esr_model 'fixed'"):
            parse_scenario_text(text)

    def test_skin_esr_does_not_require_resistances(self):
        text = MINIMAL.replace(
            "R_primary = 0.55ohm\nR_secondary = 0.55ohm\n",
            "esr_model = skin\n")
        cfg = parse_scenario_text(text)
        assert cfg.circuit.esr_model == "skin"
        assert cfg.circuit.R_primary is None

    def test_unknown_study_kind(self):
        text = MINIMAL.replace("kind = solve", "kind = teleport")
        with pytest.raises(ConfigError, match="unknown study kind"):
            parse_scenario_text(text)

    def test_unknown_shape_word(self):
        text = MINIMAL.replace("shape = circle", "shape = blob", 1)
        with pytest.raises(ConfigError, match="unknown shape"):
            parse_scenario_text(text)

    def test_polygon_requires_n_sides(self):
        text = MINIMAL.replace("shape = circle", "shape = polygon", 1)
        with pytest.raises(ConfigError, match="n_sides"):
            parse_scenario_text(text)

    def test_comments_and_blank_lines_ignored(self):
        text = "# leading comment\n\n" + MINIMAL.replace(
            "turns = 5", "turns = 5  # five turns", 1)
        cfg = parse_scenario_text(text)
        assert cfg.coil_tx.shape.turns == 5
