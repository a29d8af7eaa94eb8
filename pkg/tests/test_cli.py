import json
import re

import numpy as np
import pytest

from xspectra import cli

FIELD = re.compile(r"^-?\d\.\d{16}e[+-]\d{2,3}$")


def run(args):
    return cli.main(args)


def read_csv(path):
    return np.genfromtxt(path, delimiter=",", names=True)


class TestTable:
    def test_deterministic_and_thread_invariant(self, tmp_path, monkeypatch):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        base = [
            "table", "--family", "radial", "--a", "2", "--k", "1.75",
            "--eps", "1.2", "--psi", "1,2",
        ]
        assert run(base + ["--out", str(out1)]) == 0
        monkeypatch.setenv("XSPECTRA_THREADS", "3")
        assert run(base + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_header_and_field_format(self, tmp_path):
        out = tmp_path / "t.csv"
        assert run([
            "table", "--family", "scarf", "--a", "1.75", "--b", "3",
            "--k", "1.25", "--eps", "1", "--psi", "2", "--points", "11",
            "--out", str(out),
        ]) == 0
        lines = out.read_text().split("\n")
        assert lines[-1] == ""  # trailing newline
        assert lines[0] == "x,re_V,im_V,re_psi_2,im_psi_2,abs2_psi_2"
        for line in lines[1:-1]:
            for field in line.split(","):
                assert FIELD.match(field), field

    def test_imaginary_part_is_odd(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run([
            "table", "--family", "radial", "--a", "2", "--k", "1.75",
            "--eps", "1.2", "--xmin", "-4", "--xmax", "4", "--points", "401",
            "--out", str(out),
        ]) == 0
        data = read_csv(out)
        im = data["im_V"]
        scale = np.max(np.abs(im))
        assert np.max(np.abs(im + im[::-1])) <= 1e-12 * scale

    def test_density_column_integrates_to_one(self, tmp_path):
        out = tmp_path / "s.csv"
        assert run([
            "table", "--family", "scarf", "--a", "1.75", "--b", "3",
            "--k", "1.25", "--psi", "1", "--points", "2001", "--out", str(out),
        ]) == 0
        data = read_csv(out)
        total = np.trapezoid(data["abs2_psi_1"], data["x"])
        assert total == pytest.approx(1.0, abs=1e-3)

    def test_manifest_structure(self, tmp_path):
        out = tmp_path / "m.csv"
        manifest = tmp_path / "m.manifest.json"
        assert run([
            "table", "--family", "radial", "--a", "2", "--k", "1.75",
            "--out", str(out),
        ]) == 0
        doc = json.loads(manifest.read_text())
        assert set(doc) == {"command", "parameters", "outputs", "checks"}
        assert doc["command"] == "table"
        assert str(out) in doc["outputs"] and str(manifest) in doc["outputs"]
        for check in doc["checks"]:
            assert set(check) == {"name", "status", "measured", "tolerance"}
            assert isinstance(check["measured"], float)

    def test_rejects_bad_grid(self, tmp_path, capsys):
        code = run([
            "table", "--family", "radial", "--a", "2", "--k", "1.75",
            "--xmin", "3", "--xmax", "1", "--out", str(tmp_path / "x.csv"),
        ])
        assert code == 2
        assert capsys.readouterr().err.startswith("error:")


class TestSpectrum:
    def test_real_radial(self, tmp_path):
        out = tmp_path / "sp.csv"
        manifest = tmp_path / "sp.manifest.json"
        assert run([
            "spectrum", "--family", "radial", "--a", "2", "--k", "1.75",
            "--out", str(out), "--manifest", str(manifest),
        ]) == 0
        data = read_csv(out)
        assert list(data.dtype.names) == [
            "n", "E_formula", "E_numeric", "abs_err", "rel_err",
        ]
        assert np.all(data["rel_err"] <= 1e-3)
        doc = json.loads(manifest.read_text())
        assert doc["parameters"]["tolerances"]["spectrum-rel"] == 1e-3

    def test_complex_radial_adds_imaginary_column(self, tmp_path):
        out = tmp_path / "spc.csv"
        assert run([
            "spectrum", "--family", "radial", "--a", "2", "--k", "1.75",
            "--eps", "1.2", "--nmax", "2", "--out", str(out),
        ]) == 0
        data = read_csv(out)
        assert "im_lambda" in data.dtype.names
        assert np.all(np.abs(data["im_lambda"]) <= 1e-6 * np.abs(data["E_numeric"]))

    def test_shifted_scarf_is_refused(self, tmp_path, capsys):
        code = run([
            "spectrum", "--family", "scarf", "--a", "1.75", "--b", "3",
            "--k", "1.25", "--eps", "1", "--out", str(tmp_path / "n.csv"),
        ])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_tolerance_override_flips_outcome(self, tmp_path):
        args = [
            "spectrum", "--family", "radial", "--a", "2", "--k", "1.75",
            "--grid-points", "600", "--out", str(tmp_path / "w.csv"),
        ]
        assert run(args) == 0
        assert run(args + ["--tol-spectrum-rel", "1e-12"]) == 1


class TestVerify:
    def test_zeros_suite(self, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run(["verify", "--suite", "zeros", "--a", "5", "--nmax", "8"]) == 0
        out = capsys.readouterr().out
        assert "PASS zero-pattern-a5" in out
        doc = json.loads((tmp_path / "verify.manifest.json").read_text())
        assert all(c["status"] == "pass" for c in doc["checks"])
        assert doc["parameters"]["tolerances"]["residual"] == 1e-6

    def test_hermiticity_suite_default_parameters(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run(["verify", "--suite", "hermiticity"]) == 0

    def test_pct_suite_records_scarf_coefficient(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert run(["verify", "--suite", "pct", "--family", "scarf"]) == 0
        doc = json.loads((tmp_path / "verify.manifest.json").read_text())
        names = [c["name"] for c in doc["checks"]]
        assert "scarf-rational-matches-minus-8ab" in names
        assert "scarf-rational-excludes-alternative" in names

    def test_unknown_suite_is_usage_error(self, capsys):
        assert run(["verify", "--suite", "everything"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_tolerance_override_fails_suite(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        code = run([
            "verify", "--suite", "orthogonality", "--tol-gram-offdiag", "1e-16",
        ])
        assert code == 1
        captured = capsys.readouterr()
        assert "FAIL" in captured.out
        assert "warn:" in captured.err


class TestUsageErrors:
    def test_missing_required_flags(self, capsys):
        assert run(["table", "--family", "radial", "--k", "1.75"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_invalid_physics_parameters(self, capsys):
        assert run(["table", "--family", "radial", "--a", "-2", "--k", "1"]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error:")

    def test_unknown_subcommand(self, capsys):
        assert run(["tabulate"]) == 2

    def test_bad_psi_list(self, tmp_path, capsys):
        assert run([
            "table", "--family", "radial", "--a", "2", "--k", "1.75",
            "--psi", "1,zero", "--out", str(tmp_path / "p.csv"),
        ]) == 2
