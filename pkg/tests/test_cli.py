import json
import math
import subprocess
import sys

import pytest

from helmlab import eigencalc as ec
from helmlab.cli import main


class TestThresholdCommand:
    def test_rect_example(self, capsys):
        assert main(["threshold", "--region", "rect", "1", "1"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("2.221441469")
        assert float(out) == pytest.approx(0.5 * math.pi * math.sqrt(2.0), rel=1e-15)

    def test_ball(self, capsys):
        assert main(["threshold", "--region", "ball", "2", "1"]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(2.404825557695773, abs=1e-12)

    def test_mask_region(self, capsys, tmp_path):
        path = tmp_path / "sq.mask"
        ec.save_mask(ec.square_mask(1.0, 1.0 / 32.0), path)
        assert main(["threshold", "--region", "mask", str(path)]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(math.sqrt(2.0) * math.pi,
                                                               rel=1e-3)

    def test_unknown_region_exits_1(self, capsys):
        assert main(["threshold", "--region", "shoebox", "1"]) == 1
        assert "usage error" in capsys.readouterr().err


class TestVerifyCommand:
    def test_failing_verification_still_exits_0(self, capsys):
        assert main(["verify", "--candidate", "slab", "1", "--k", "2.0"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["pass"] is False
        assert report["max_residual"] > 0.0

    def test_passing_verification(self, capsys):
        assert main(["verify", "--candidate", "rect", "1", "1", "--k", "1.0"]) == 0
        assert json.loads(capsys.readouterr().out)["pass"] is True


class TestEigCommand:
    def test_square_mask(self, capsys, tmp_path):
        path = tmp_path / "sq.mask"
        ec.save_mask(ec.square_mask(1.0, 1.0 / 32.0), path)
        assert main(["eig", "--mask", str(path), "--count", "2"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["eigenvalues"][0] == pytest.approx(2.0 * math.pi**2, rel=5e-3)

    def test_missing_file_exits_1(self, capsys):
        assert main(["eig", "--mask", "/nonexistent/path.mask"]) == 1


class TestForwardCommand:
    def test_csv_output(self, capsys, tmp_path):
        out_file = tmp_path / "far.csv"
        code = main(["forward", "--curve", "circle", "0", "0", "1", "--k", "1.0",
                     "--d", "0", "--n", "64", "--angles", "36",
                     "--output", str(out_file)])
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0] == "theta,re,im"
        assert len(lines) == 37
        theta0, re0, im0 = (float(v) for v in lines[1].split(","))
        assert theta0 == 0.0

    def test_stdout_default(self, capsys):
        assert main(["forward", "--curve", "circle", "0", "0", "1", "--k", "1.0",
                     "--n", "64", "--angles", "12"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("theta,re,im")

    def test_numerical_failure_exits_2(self, capsys):
        code = main(["forward", "--curve", "circle", "0", "0", "1", "--k", "30.0",
                     "--n", "512"])
        assert code == 2
        assert "numerical failure" in capsys.readouterr().err


class TestSweepCommand:
    def test_sweep_to_file(self, capsys, tmp_path):
        config = {"curve_a": "circle 0 0 1", "curve_b": "circle 0.5 0 1",
                  "k": [1.0], "n": 64, "angles": 90,
                  "output": str(tmp_path / "sweep.csv")}
        cfg_path = tmp_path / "config.json"
        cfg_path.write_text(json.dumps(config))
        assert main(["sweep", "--config", str(cfg_path)]) == 0
        lines = (tmp_path / "sweep.csv").read_text().strip().split("\n")
        assert lines[0] == "k,delta,error_floor,threshold_k0,below_threshold"
        assert len(lines) == 2

    def test_negative_wavenumber_exits_1(self, capsys, tmp_path):
        config = {"curve_a": "circle 0 0 1", "curve_b": "kite 0 0 1", "k": [-1.0]}
        cfg_path = tmp_path / "config.json"
        cfg_path.write_text(json.dumps(config))
        assert main(["sweep", "--config", str(cfg_path)]) == 1

    def test_malformed_config_exits_1(self, capsys, tmp_path):
        cfg_path = tmp_path / "config.json"
        cfg_path.write_text(json.dumps({"curve_a": "circle 0 0 1"}))
        assert main(["sweep", "--config", str(cfg_path)]) == 1


class TestParserBehavior:
    def test_unknown_subcommand_exits_1(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 1

    def test_missing_required_exits_1(self):
        with pytest.raises(SystemExit) as info:
            main(["threshold"])
        assert info.value.code == 1

    def test_console_script_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "helmlab.cli", "threshold", "--region", "interval", "1"],
            capture_output=True, text=True,
        )
        assert result.returncode == 0
        assert float(result.stdout) == pytest.approx(math.pi / 2.0, rel=1e-15)
