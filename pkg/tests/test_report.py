import json
import subprocess
import sys

from prda.engine import sensitivity_curve
from prda.priors import build_prior, design_est
from prda.report import (
    sensitivity_csv,
    write_design_est_report,
    write_sensitivity_report,
)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class TestSensitivityReport:
    def test_writes_csv_and_figure(self, tmp_path):
        rows = sensitivity_curve(0.35, [10, 20, 50], B=500, seed=5)
        csv_path, fig_path = write_sensitivity_report(rows, 0.35, str(tmp_path))
        text = open(csv_path).read()
        assert text.splitlines()[0] == "n,power,type_s,type_m"
        assert len(text.strip().splitlines()) == 4
        with open(fig_path, "rb") as fh:
            assert fh.read(8) == PNG_MAGIC

    def test_csv_parses_back(self):
        rows = sensitivity_curve(0.35, [10, 20], B=200, seed=6)
        lines = sensitivity_csv(rows).strip().splitlines()[1:]
        for (n, res), line in zip(rows, lines):
            cells = line.split(",")
            assert int(cells[0]) == n
            assert float(cells[1]) == res.power


class TestDesignEstReport:
    def test_writes_draws_and_histograms(self, tmp_path):
        prior = build_prior(limits=(0.2, 0.6), distribution="normal")
        res = design_est(20, 20, prior, B=50, B0=40, seed=9, return_data=True)
        csv_path, fig_path = write_design_est_report(res, str(tmp_path))
        text = open(csv_path).read()
        assert text.splitlines()[0] == "d_drawn,power,type_s,type_m"
        with open(fig_path, "rb") as fh:
            assert fh.read(8) == PNG_MAGIC


class TestCliReportPath:
    def test_sensitivity_report_flag(self, tmp_path):
        out = subprocess.run(
            [sys.executable, "-m", "prda.cli", "sensitivity", "--d", "0.35",
             "--n-grid", "10,20", "--B", "200", "--seed", "4",
             "--report", str(tmp_path), "--output", "json"],
            capture_output=True, text=True,
        )
        assert out.returncode == 0
        assert (tmp_path / "sensitivity.csv").exists()
        assert (tmp_path / "sensitivity.png").exists()
        json.loads(out.stdout)  # stdout stays valid JSON alongside the files

    def test_design_est_report_flag(self, tmp_path):
        out = subprocess.run(
            [sys.executable, "-m", "prda.cli", "design-est", "--n1", "15",
             "--limits-lo", "0.2", "--limits-hi", "0.6", "--B", "50",
             "--B0", "30", "--seed", "4", "--report", str(tmp_path)],
            capture_output=True, text=True,
        )
        assert out.returncode == 0
        assert (tmp_path / "design_est_draws.csv").exists()
        assert (tmp_path / "design_est.png").exists()
