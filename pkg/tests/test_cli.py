"""Command-line interface tests: output schemas, determinism, and exit
codes.  Everything runs in-process through ``main`` so exit codes are
asserted directly."""

import json

import numpy as np
import pytest

from gkcs.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestSpectrumCommand:
    def test_csv_shape(self, capsys):
        code, out = _run(capsys, "spectrum", "--nu", "0.5", "--beta", "0.7",
                         "--levels", "5", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,E_n,excitation,rho"
        assert len(lines) == 6
        assert out.endswith("\n")
        first = lines[1].split(",")
        assert first[0] == "0"
        assert float(first[1]) == pytest.approx(1.5**2 - (0.7 / 1.5) ** 2, rel=1e-15)

    def test_json_schema(self, capsys):
        code, out = _run(capsys, "spectrum", "--nu", "1", "--levels", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["command"] == "spectrum"
        assert payload["params"] == {"nu": 1.0, "beta": 0.0, "s": 1.0, "L": 1.0}
        assert [row["n"] for row in payload["levels"]] == [0, 1, 2]


class TestScans:
    def test_stats_scan_columns(self, capsys):
        code, out = _run(capsys, "stats-scan", "--nu", "0", "--s", "1",
                         "--x", "0:0.5:0.1", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x,mean_N,mandel_Q,fano,g2,fubini_W"
        assert len(lines) == 1 + 6
        row = lines[-1].split(",")
        assert float(row[3]) == pytest.approx(float(row[2]) + 1.0, rel=1e-12)

    def test_geometry_scan(self, capsys):
        code, out = _run(capsys, "geometry-scan", "--nu", "1", "--x", "0:1:0.5",
                         "--format", "csv")
        assert code == 0
        header, *rows = out.splitlines()
        assert header == "x,fubini_W,bundle_term,projection_term"
        for row in rows:
            x, w, bundle, proj = (float(v) for v in row.split(","))
            assert w == pytest.approx(bundle - proj, abs=1e-12)

    def test_svg_output(self, capsys):
        code, out = _run(capsys, "stats-scan", "--nu", "0", "--x", "0:2:0.5",
                         "--format", "svg")
        assert code == 0
        assert out.startswith("<svg ") and out.rstrip().endswith("</svg>")


class TestCoherentCommand:
    def test_json_payload(self, capsys):
        code, out = _run(capsys, "cs", "--nu", "1", "--z-re", "1", "--z-im", "0.5",
                         "--gamma", "0.2")
        assert code == 0
        payload = json.loads(out)
        assert payload["n_max"] == len(payload["coefficients"]) - 1
        probs = [c["probability"] for c in payload["coefficients"]]
        assert sum(probs) == pytest.approx(1.0, abs=1e-10)
        assert payload["action"] == pytest.approx(1.25, abs=1e-9)

    def test_csv_table(self, capsys):
        code, out = _run(capsys, "cs", "--nu", "0", "--z-re", "1", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "n,coeff_re,coeff_im,probability"

    def test_probability_bars(self, capsys):
        code, out = _run(capsys, "cs", "--nu", "0", "--z-re", "2", "--format", "svg")
        assert code == 0
        assert "<rect" in out


class TestQuantizeCommand:
    def test_matrix_json(self, capsys):
        code, out = _run(capsys, "quantize", "--nu", "0", "--symbol", "z",
                         "--nmax", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["dim"] == 4
        entry = payload["entries"][0][1]
        assert entry[0] == pytest.approx(np.sqrt(3.0), rel=1e-15)
        assert entry[1] == 0.0

    def test_monomial_and_boson(self, capsys):
        code, out = _run(capsys, "quantize", "--nu", "1", "--symbol", "monomial",
                         "--alpha", "2", "--sigma", "0", "--nmax", "4")
        assert code == 0
        assert json.loads(out)["symbol"] == "monomial(2,0)"
        code, out = _run(capsys, "quantize", "--nu", "1", "--symbol", "boson-a",
                         "--nmax", "4", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "row,col,re,im"


class TestValidateCommand:
    def test_green_run_exit_zero(self, capsys):
        code, out = _run(capsys, "validate", "--nu", "0", "--s", "1")
        assert code == 0
        assert "ALL IDENTITIES VERIFIED" in out
        assert "FAIL" not in out.replace("PASS", "")

    def test_json_report(self, capsys):
        code, out = _run(capsys, "validate", "--nu", "0.5", "--beta", "0.7",
                         "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["all_passed"] is True
        assert len(payload["reports"]) > 50


class TestDeterminismAndErrors:
    def test_byte_identical_runs(self, tmp_path, capsys):
        files = []
        for tag in ("a", "b"):
            target = tmp_path / f"{tag}.json"
            code = main(["stats-scan", "--nu", "0.5", "--x", "0:3:0.25",
                         "--out", str(target)])
            assert code == 0
            files.append(target.read_bytes())
        assert files[0] == files[1]

    def test_seventeen_digit_serialization(self, capsys):
        code, out = _run(capsys, "spectrum", "--nu", "0.1", "--levels", "2",
                         "--format", "csv")
        assert code == 0
        value = out.splitlines()[1].split(",")[1]
        assert float(value) == (0.1 + 1.0) ** 2  # round-trips exactly

    def test_config_error_exit_two(self, capsys):
        code = main(["stats-scan", "--nu", "0", "--x", "5:1:0.1"])
        assert code == 2
        code = main(["spectrum", "--nu", "0", "--levels", "0"])
        assert code == 2
        code = main(["cs", "--nu", "0", "--tol", "0.5"])
        assert code == 2

    def test_unknown_flag_exit_two(self):
        with pytest.raises(SystemExit) as info:
            main(["spectrum", "--nu", "0", "--bogus", "1"])
        assert info.value.code == 2

    def test_budget_failure_exit_three(self, capsys):
        code = main(["cs", "--nu", "0", "--z-re", "1e8"])
        assert code == 3

    def test_env_budget_exit_three(self, capsys, monkeypatch):
        monkeypatch.setenv("GKCS_EVAL_BUDGET", "10")
        code = main(["validate", "--nu", "0"])
        assert code == 3
