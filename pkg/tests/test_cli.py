import json
import math
import subprocess
import sys

import numpy as np
import pytest

from dilateq.cli import main, to_json

TENT = '{"breakpoints": [0, 1, 2], "values": [1, 1, -2]}'


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tent_file(tmp_path):
    path = tmp_path / "tent.json"
    path.write_text(TENT)
    return str(path)


class TestSerializer:
    def test_seventeen_digits(self):
        assert to_json(5 / 9) == "0.55555555555555558"

    def test_fixed_key_order(self):
        assert to_json({"b": 1, "a": 2}) == '{"b": 1, "a": 2}'

    def test_null_and_bool(self):
        assert to_json({"x": None, "y": True}) == '{"x": null, "y": true}'


class TestRegularity:
    def test_inline(self, capsys):
        code, out, _ = run(capsys, "regularity", "[2,3]")
        assert code == 0
        data = json.loads(out)
        assert data["m"] == 2
        assert data["contraction"] == pytest.approx(5 / 9, rel=1e-15)
        assert list(data) == ["m", "contraction", "lower_bound", "upper_bound"]

    def test_single(self, capsys):
        code, out, _ = run(capsys, "regularity", "[2]")
        assert code == 0
        assert json.loads(out)["m"] == 1

    def test_from_file(self, capsys, tmp_path):
        path = tmp_path / "coeffs.json"
        path.write_text("[2, 3]")
        code, out, _ = run(capsys, "regularity", str(path))
        assert code == 0 and json.loads(out)["m"] == 2

    def test_unit_entry_exits_2(self, capsys):
        code, _, err = run(capsys, "regularity", "[1,2]")
        assert code == 2
        assert "error" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run(capsys, "regularity", "no_such_file.json")
        assert code == 2


class TestNormalize:
    def test_below_one(self, capsys):
        code, out, _ = run(capsys, "normalize", "[0.5,3]")
        assert code == 0
        data = json.loads(out)
        assert data["entries"] == [2, 6]
        assert data["shifts"] == pytest.approx([math.log(2), math.log(6)])


class TestExtend:
    def test_sample_values(self, capsys, tent_file):
        code, out, err = run(
            capsys, "extend", tent_file, "--shifts", "[1,2]",
            "--range", -3, 6, "--samples", 901,
        )
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "w,value"
        table = {float(r.split(",")[0]): float(r.split(",")[1]) for r in rows[1:]}
        assert table[2.5] == pytest.approx(-0.5, abs=1e-12)
        assert table[-0.5] == pytest.approx(-0.5, abs=1e-12)
        report = json.loads(err)
        assert abs(report["interpolation_residual"]) <= 1e-12
        assert report["max_additive_residual"] <= 1e-9

    def test_incompatible_boundary_exits_3(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"breakpoints": [0, 1, 2], "values": [1, 1, -1.9]}')
        code, _, err = run(
            capsys, "extend", str(path), "--shifts", "[1,2]", "--range", -1, 3
        )
        assert code == 3
        assert "residual" in err

    def test_zero_boundary(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        path.write_text('{"breakpoints": [0, 2], "values": [0, 0]}')
        code, out, _ = run(
            capsys, "extend", str(path), "--shifts", "[1,2]",
            "--range", -2, 4, "--samples", 11,
        )
        assert code == 0
        values = [float(r.split(",")[1]) for r in out.strip().splitlines()[1:]]
        assert values == [0.0] * 11

    def test_no_partial_output_on_failure(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"breakpoints": [0, 1, 2], "values": [1, 1, -1.9]}')
        out_path = tmp_path / "dump.csv"
        code, _, _ = run(
            capsys, "extend", str(bad), "--shifts", "[1,2]",
            "--range", -1, 3, "--out", str(out_path),
        )
        assert code == 3
        assert not out_path.exists()

    def test_out_file(self, capsys, tent_file, tmp_path):
        out_path = tmp_path / "dump.csv"
        code, out, _ = run(
            capsys, "extend", tent_file, "--shifts", "[1,2]",
            "--range", 0, 2, "--samples", 5, "--out", str(out_path),
        )
        assert code == 0 and out == ""
        assert out_path.read_text().splitlines()[0] == "w,value"


class TestResidual:
    def test_additive(self, capsys, tent_file):
        code, out, _ = run(
            capsys, "residual", "--boundary", tent_file, "--shifts", "[1,2]",
            "--range", -3, 3, "--samples", 2001,
        )
        assert code == 0
        assert json.loads(out)["max_residual"] <= 1e-9

    def test_multiplicative(self, capsys, tmp_path):
        # boundary lives on [0, ln 3] for coefficients (2, 3)
        path = tmp_path / "log_tent.json"
        path.write_text(
            json.dumps(
                {
                    "breakpoints": [0.0, math.log(2), math.log(3)],
                    "values": [1.0, 1.0, -2.0],
                }
            )
        )
        code, out, _ = run(
            capsys, "residual", "--boundary", str(path),
            "--coeffs", "[2,3]", "--range", 0.1, 10, "--samples", 500,
        )
        assert code == 0
        assert json.loads(out)["max_residual"] <= 1e-9

    def test_requires_one_mode(self, capsys, tent_file):
        code, _, _ = run(
            capsys, "residual", "--boundary", tent_file, "--range", 0, 1
        )
        assert code == 2


class TestPeriodicity:
    def test_three_certificates(self, capsys):
        code, out, _ = run(capsys, "periodicity", "--shifts", "[1,2]", "--alpha-max", 10)
        assert code == 0
        certs = json.loads(out)
        assert [c["alpha"] for c in certs] == pytest.approx(
            [2 * math.pi / 3, 4 * math.pi / 3, 8 * math.pi / 3], abs=1e-10
        )
        assert all(list(c) == ["alpha", "period", "residual"] for c in certs)

    def test_repeated_shifts_empty(self, capsys):
        code, out, _ = run(capsys, "periodicity", "--shifts", "[1,1]", "--alpha-max", 20)
        assert code == 0
        assert json.loads(out) == []

    def test_equispaced(self, capsys):
        code, out, _ = run(capsys, "equispaced", "--n", 2, "--d", 1, "--m-max", 4)
        assert code == 0
        assert json.loads(out) == pytest.approx([2 * math.pi / 3, 4 * math.pi / 3, 8 * math.pi / 3])

    def test_fourier_matrix(self, capsys):
        code, out, _ = run(
            capsys, "fourier-matrix", "--k", 1, "--theta", 2 * math.pi, "--shifts", "[1,2]"
        )
        assert code == 0
        data = json.loads(out)
        np.testing.assert_allclose(data["entries"], [[3, 0], [0, 3]], atol=1e-12)


class TestTwoTerm:
    def test_impossible(self, capsys):
        code, out, _ = run(capsys, "two-term", 1, 1)
        assert code == 0
        assert out.strip() == '{"exists": false, "witness": null}'

    def test_exists(self, capsys):
        code, out, _ = run(capsys, "two-term", 5, 4)
        assert code == 0
        assert json.loads(out) == {"exists": True, "witness": [1, 1]}

    def test_not_reduced_exits_2(self, capsys):
        code, _, _ = run(capsys, "two-term", 2, 2)
        assert code == 2


class TestZeros:
    def test_default_rectangle(self, capsys):
        code, out, _ = run(capsys, "zeros", "--n", 2)
        assert code == 0
        zeros = json.loads(out)
        assert [z["im"] for z in zeros] == pytest.approx(
            [math.pi / math.log(2), 3 * math.pi / math.log(2), 5 * math.pi / math.log(2)],
            abs=1e-10,
        )
        assert all(z["N"] == 2 and z["residual"] <= 1e-10 for z in zeros)

    def test_scan_csv(self, capsys, tmp_path):
        scan = tmp_path / "scan.csv"
        code, _, _ = run(
            capsys, "zeros", "--n", 2, "--re-min", 0.5, "--re-max", 1.5,
            "--im-min", 1, "--im-max", 2, "--grid-re", 4, "--grid-im", 4,
            "--scan-csv", str(scan),
        )
        assert code == 0
        lines = scan.read_text().strip().splitlines()
        assert lines[0] == "re,im,abs" and len(lines) == 17


class TestMoraSolution:
    def test_known_zero(self, capsys):
        code, out, err = run(
            capsys, "mora-solution", "--n", 2,
            "--re", 0.0, "--im", math.pi / math.log(2),
            "--range", -4, 4, "--samples", 9,
        )
        assert code == 0
        rows = dict(
            (float(r.split(",")[0]), float(r.split(",")[1]))
            for r in out.strip().splitlines()[1:]
        )
        assert rows[-1.0] == 1.0
        assert rows[-2.0] == pytest.approx(-1.0, rel=1e-12)
        assert rows[3.0] == 0.0
        assert json.loads(err)["equation_residual"] <= 1e-10

    def test_not_a_zero_exits_3(self, capsys):
        code, _, _ = run(capsys, "mora-solution", "--n", 2, "--re", 0.0, "--im", 1.0)
        assert code == 3


class TestPopoviciu:
    def test_tent_determinant(self, capsys, tent_file):
        code, out, _ = run(
            capsys, "popoviciu", "--boundary", tent_file, "--shifts", "[1,2]",
            "--x", 0.5, "--h", 0.3, "--order", 3,
        )
        assert code == 0
        assert json.loads(out)["det"] == pytest.approx(-0.3078, abs=1e-12)


class TestReproducibility:
    def test_byte_identical_runs(self, capsys):
        first = run(capsys, "periodicity", "--shifts", "[1,2]", "--alpha-max", 10)
        second = run(capsys, "periodicity", "--shifts", "[1,2]", "--alpha-max", 10)
        assert first == second

    def test_module_entry_point(self):
        cmd = [sys.executable, "-m", "dilateq", "zeros", "--n", "2"]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        assert a.returncode == 0
        assert a.stdout == b.stdout
