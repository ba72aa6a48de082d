import json
import subprocess
import sys

import numpy as np
import pytest

from qtelsim import favg, fit_exponential
from qtelsim.cli import main


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, rows


@pytest.fixture(autouse=True)
def serial_pool(monkeypatch):
    # keep CLI tests single-process unless a test overrides LT_THREADS itself
    monkeypatch.setenv("LT_THREADS", "1")


class TestSurfaceCommand:
    def test_channel_dephasing_surface(self, tmp_path):
        out = tmp_path / "surf.csv"
        code = main(
            [
                "surface", "--case", "B", "--axes", "z", "--kappa-tau", "0.75",
                "--theta-grid", "9", "--phi-grid", "8", "--out", str(out),
            ]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["theta", "phi", "fidelity"]
        assert rows.shape == (72, 3)
        # theta-outer row order, and the theta = 0 block teleports perfectly
        assert np.all(rows[:8, 0] == 0.0)
        np.testing.assert_allclose(rows[:8, 2], 1.0, atol=1e-7)

    def test_isotropic_input_noise_is_flat(self, tmp_path):
        out = tmp_path / "flat.csv"
        assert main(
            [
                "surface", "--case", "A", "--axes", "xyz", "--kappa-tau", "0.75",
                "--theta-grid", "7", "--phi-grid", "7", "--out", str(out),
            ]
        ) == 0
        _, rows = read_csv(out)
        np.testing.assert_allclose(rows[:, 2], 0.5 + 0.5 * np.exp(-3.0), atol=1e-6)

    def test_gate_noise_zero_exposure_all_ones(self, tmp_path):
        out = tmp_path / "ones.csv"
        assert main(
            [
                "surface", "--case", "C", "--axes", "z", "--kappa-tau", "0",
                "--theta-grid", "5", "--phi-grid", "5", "--out", str(out),
            ]
        ) == 0
        _, rows = read_csv(out)
        np.testing.assert_allclose(rows[:, 2], 1.0, atol=1e-6)

    def test_determinism(self, tmp_path):
        args = [
            "surface", "--case", "B", "--axes", "x", "--kappa-tau", "0.4",
            "--theta-grid", "6", "--phi-grid", "6",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_manifest_sidecar(self, tmp_path):
        out = tmp_path / "m.csv"
        main(
            [
                "surface", "--case", "A", "--axes", "z", "--kappa-tau", "0.2",
                "--theta-grid", "4", "--phi-grid", "4", "--out", str(out),
            ]
        )
        manifest = json.loads((tmp_path / "m.csv.manifest.json").read_text())
        assert manifest["command"] == "surface"
        assert manifest["parameters"]["case"] == "A"
        assert str(out) in manifest["outputs"]
        assert "id" in manifest and "tool_version" in manifest

    def test_json_format(self, tmp_path):
        out = tmp_path / "s.json"
        main(
            [
                "surface", "--case", "A", "--axes", "z", "--kappa-tau", "0.2",
                "--theta-grid", "4", "--phi-grid", "4", "--out", str(out),
                "--format", "json",
            ]
        )
        payload = json.loads(out.read_text())
        assert payload["columns"] == ["theta", "phi", "fidelity"]
        assert len(payload["rows"]) == 16


class TestAverageSweepCommand:
    def test_input_noise_sweep_matches_oracle(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "average-sweep", "--case", "A", "--axes", "x",
                "--kappa-tau-sweep", "0:2:5", "--out", str(out), "--with-oracle",
            ]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["kappa_tau", "f_avg_numeric", "f_avg_oracle"]
        np.testing.assert_allclose(rows[:, 1], favg("A1x", rows[:, 0]), atol=1e-5)
        np.testing.assert_allclose(rows[:, 2], favg("A1x", rows[:, 0]), atol=1e-12)

    def test_isotropic_channel_sweep(self, tmp_path):
        out = tmp_path / "iso.csv"
        assert main(
            [
                "average-sweep", "--case", "B", "--axes", "xyz",
                "--kappa-tau-sweep", "0:1:5", "--out", str(out),
            ]
        ) == 0
        _, rows = read_csv(out)
        np.testing.assert_allclose(rows[:, 1], favg("B2iso", rows[:, 0]), atol=1e-5)

    def test_fit_report_and_roundtrip(self, tmp_path):
        out = tmp_path / "fit.csv"
        main(
            [
                "average-sweep", "--case", "A", "--axes", "z",
                "--kappa-tau-sweep", "0:2.5:11", "--out", str(out),
            ]
        )
        report = json.loads((tmp_path / "fit.fit.json").read_text())
        assert report["rate"] == pytest.approx(2.0, abs=1e-4)
        assert report["fixed_asymptote"] is False
        # refitting the written 12-digit values reproduces the report
        _, rows = read_csv(out)
        refit = fit_exponential(rows[:, 0], rows[:, 1])
        assert refit.rate == pytest.approx(report["rate"], abs=1e-9)
        assert refit.asymptote == pytest.approx(report["asymptote"], abs=1e-9)

    def test_worker_pool_matches_serial(self, tmp_path, monkeypatch):
        args = [
            "average-sweep", "--case", "A", "--axes", "z",
            "--kappa-tau-sweep", "0:1:4",
        ]
        serial, pooled = tmp_path / "serial.csv", tmp_path / "pooled.csv"
        monkeypatch.setenv("LT_THREADS", "1")
        assert main(args + ["--out", str(serial)]) == 0
        monkeypatch.setenv("LT_THREADS", "2")
        assert main(args + ["--out", str(pooled)]) == 0
        assert serial.read_bytes() == pooled.read_bytes()


class TestGcurveCommand:
    def test_endpoints_small(self, tmp_path):
        out = tmp_path / "g.csv"
        code = main(
            [
                "gcurve", "--case", "D", "--axes", "z",
                "--kappa-tau-sweep", "0:6:3", "--theta-grid", "21", "--out", str(out),
            ]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["kappa_tau", "g"]
        assert rows[0, 1] <= 1e-6
        assert rows[-1, 1] <= 0.05

    def test_requires_gate_noise_case(self, tmp_path):
        code = main(
            [
                "gcurve", "--case", "A", "--axes", "z",
                "--kappa-tau-sweep", "0:1:3", "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert code == 2


class TestChannelCommand:
    def test_popescu_report(self, tmp_path):
        out = tmp_path / "pop.json"
        assert main(["channel", "--channel", "popescu", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["f_avg"] == pytest.approx(0.75, abs=1e-9)
        grid = np.array(report["fidelity"])
        assert grid.shape == (5, 5)
        np.testing.assert_allclose(grid, 0.75, atol=1e-9)
        assert report["singlet_fraction"] == pytest.approx(0.625, abs=1e-12)

    def test_dephased_report(self, tmp_path):
        out = tmp_path / "dep.json"
        assert main(["channel", "--channel", "dephased:1.0", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        expected = 2.0 / 3.0 + np.exp(-1.0) / 3.0
        assert report["horodecki_optimal"] == pytest.approx(expected, abs=1e-12)
        assert report["f_avg"] == pytest.approx(expected, abs=1e-6)

    def test_maximally_mixed_report(self, tmp_path):
        out = tmp_path / "mm.json"
        assert main(["channel", "--channel", "maximally-mixed", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["f_avg"] == pytest.approx(0.5, abs=1e-12)

    def test_channel_file(self, tmp_path):
        path = tmp_path / "pair.txt"
        path.write_text(
            "0.5,0 0,0 0,0 0.5,0\n"
            "0,0 0,0 0,0 0,0\n"
            "0,0 0,0 0,0 0,0\n"
            "0.5,0 0,0 0,0 0.5,0\n"
        )
        out = tmp_path / "file.json"
        assert main(["channel", "--channel", f"file:{path}", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["f_avg"] == pytest.approx(1.0, abs=1e-9)

    def test_unreadable_file_is_usage_error(self, tmp_path):
        code = main(
            ["channel", "--channel", "file:/nonexistent.txt", "--out", str(tmp_path / "x.json")]
        )
        assert code == 2

    def test_invalid_density_matrix_is_numerical_error(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text(
            "1,0 0,0 0,0 0,0\n"
            "0,0 1,0 0,0 0,0\n"
            "0,0 0,0 1,0 0,0\n"
            "0,0 0,0 0,0 1,0\n"
        )  # trace 4
        code = main(["channel", "--channel", f"file:{path}", "--out", str(tmp_path / "x.json")])
        assert code == 3


class TestUsageErrors:
    def test_bad_sweep_spec(self, tmp_path):
        code = main(
            [
                "average-sweep", "--case", "A", "--axes", "z",
                "--kappa-tau-sweep", "nonsense", "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert code == 2

    def test_unknown_channel(self, tmp_path):
        code = main(["channel", "--channel", "bogus", "--out", str(tmp_path / "x.json")])
        assert code == 2

    def test_missing_required_flag(self):
        assert main(["surface", "--case", "A"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [
            sys.executable, "-m", "qtelsim", "surface", "--case", "B", "--axes", "z",
            "--kappa-tau", "0.3", "--theta-grid", "4", "--phi-grid", "4", "--out", str(out),
        ],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert out.exists()
    proc = subprocess.run([sys.executable, "-m", "qtelsim"], capture_output=True)
    assert proc.returncode == 2  # no subcommand: usage error
