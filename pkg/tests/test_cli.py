import importlib.resources
import io
import os

import pytest

from riptsim import cli

BASE = """\
[coil_tx]
shape = circle
aperture = 1m
turns = 2
pitch = 1cm

[coil_rx]
shape = circle
aperture = 1m
turns = 2
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
"""

STUDY_BLOCKS = {
    "solve": "kind = solve\naxial_distance = 1m\n",
    "freq_sweep": "kind = freq_sweep\naxial_distance = 1m\n"
                  "f_min = 500kHz\nf_max = 700kHz\npoints = 11\n",
    "distance_sweep": "kind = distance_sweep\ndistances = 0.5m, 1m, 2m\n",
    "offset_sweep": "kind = offset_sweep\naxial_distance = 1m\n"
                    "offsets = 0m, 0.25m, 0.5m\n",
    "optimize_turns": "kind = optimize_turns\nturns_min = 2\nturns_max = 3\n"
                      "axial_distance = 1m\n",
    "shape_compare": "kind = shape_compare\naxial_distance = 1m\n",
    "charge": "kind = charge\npack_voltage = 12V\ncapacity = 0.8Ah\n"
              "series_count = 2\ndelivered_power = 100W\n",
}


def write_scenario(tmp_path, study_block, name="case.scenario"):
    p = tmp_path / name
    p.write_text(BASE + study_block, encoding="utf-8")
    return str(p)


def bundled_scenario_path():
    ref = importlib.resources.files("riptsim") / "scenarios" / "reference_link.scenario"
    return str(ref)


class TestRunSolve:
    def test_bundled_scenario_succeeds(self, tmp_path):
        out = tmp_path / "out"
        stream = io.StringIO()
        status = cli.run(bundled_scenario_path(), output_dir=str(out),
                         stream=stream)
        assert status == 0
        assert (out / "solve.csv").is_file()
        assert (out / "summary.txt").is_file()
        text = stream.getvalue()
        assert "efficiency" in text
        csv = (out / "solve.csv").read_text()
        header, row = csv.strip().splitlines()
        assert header.startswith("axial_distance_m,")
        assert len(row.split(",")) == len(header.split(","))

    def test_reruns_are_byte_identical(self, tmp_path):
        path = write_scenario(tmp_path, STUDY_BLOCKS["solve"])
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert cli.run(path, output_dir=str(out1), stream=io.StringIO()) == 0
        assert cli.run(path, output_dir=str(out2), stream=io.StringIO()) == 0
        assert (out1 / "solve.csv").read_bytes() == \
            (out2 / "solve.csv").read_bytes()
        assert (out1 / "summary.txt").read_bytes() == \
            (out2 / "summary.txt").read_bytes()

    def test_csv_uses_lf_line_endings(self, tmp_path):
        path = write_scenario(tmp_path, STUDY_BLOCKS["solve"])
        out = tmp_path / "out"
        cli.run(path, output_dir=str(out), stream=io.StringIO())
        raw = (out / "solve.csv").read_bytes()
        assert b"\r" not in raw


class TestStudySmoke:
    @pytest.mark.parametrize("kind", sorted(STUDY_BLOCKS))
    def test_each_study_kind_runs(self, tmp_path, kind):
        path = write_scenario(tmp_path, STUDY_BLOCKS[kind])
        out = tmp_path / "out"
        status = cli.run(path, output_dir=str(out), stream=io.StringIO())
        assert status == 0
        csv_path = out / f"{kind}.csv"
        assert csv_path.is_file()
        lines = csv_path.read_text().strip().splitlines()
        assert len(lines) >= 2  # header plus at least one data row
        width = len(lines[0].split(","))
        assert all(len(line.split(",")) == width for line in lines[1:])


class TestErrorPaths:
    def test_missing_config_file(self, tmp_path, capsys):
        out = tmp_path / "out"
        status = cli.run(str(tmp_path / "absent.scenario"),
                         output_dir=str(out), stream=io.StringIO())
        assert status == 1
        assert not out.exists()
        assert "error:" in capsys.readouterr().err

    def test_study_error_writes_nothing(self, tmp_path, capsys):
        # solve without its required axial_distance key
        path = write_scenario(tmp_path, "kind = solve\n")
        out = tmp_path / "out"
        status = cli.run(path, output_dir=str(out), stream=io.StringIO())
        assert status == 1
        assert not out.exists()
        assert "axial_distance" in capsys.readouterr().err

    def test_malformed_config_reports_line(self, tmp_path, capsys):
        path = write_scenario(tmp_path, "kind = solve\naxial_distance = 1m\n"
                                        "bogus = 1\n")
        status = cli.run(path, output_dir=str(tmp_path / "out"),
                         stream=io.StringIO())
        assert status == 1
        assert "line" in capsys.readouterr().err


class TestValidate:
    def test_reference_checks_all_pass(self, tmp_path):
        stream = io.StringIO()
        status = cli.run(bundled_scenario_path(), output_dir=str(tmp_path),
                         validate=True, stream=stream)
        text = stream.getvalue()
        assert status == 0
        assert "validation PASSED" in text
        assert "[FAIL]" not in text
        assert text.count("[PASS]") >= 8

    def test_validate_writes_no_files(self, tmp_path):
        out = tmp_path / "out"
        cli.run(bundled_scenario_path(), output_dir=str(out),
                validate=True, stream=io.StringIO())
        assert not out.exists()


class TestMain:
    def test_argument_wiring(self, tmp_path):
        path = write_scenario(tmp_path, STUDY_BLOCKS["charge"])
        out = tmp_path / "out"
        status = cli.main([path, "--output-dir", str(out), "--threads", "1"])
        assert status == 0
        assert (out / "charge.csv").is_file()

    def test_missing_argument_exits(self):
        with pytest.raises(SystemExit):
            cli.main([])
