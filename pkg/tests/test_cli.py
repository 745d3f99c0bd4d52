import json
import math

import numpy as np
import pytest

from maxpoly import cli
from maxpoly.remez import RemezError


def run(argv):
    return cli.main(argv)


class TestNodes:
    def test_csv_output(self, tmp_path):
        out = tmp_path / "nodes.csv"
        assert run(["nodes", "--preset", "C1", "--M", "4", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "m,x,theta"
        xs = [float(l.split(",")[1]) for l in lines[1:]]
        np.testing.assert_allclose(xs, [-1, -math.sqrt(2) / 2, 0, math.sqrt(2) / 2, 1], atol=1e-12)

    def test_json_output(self, tmp_path):
        out = tmp_path / "nodes.json"
        assert run(["nodes", "--preset", "UC", "--M", "5", "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["provenance"]["M"] == 5

    def test_explicit_exponents(self, tmp_path):
        out = tmp_path / "nodes.csv"
        assert run(["nodes", "--alpha", "0", "--beta", "0", "--M", "4", "--out", str(out)]) == 0
        xs = [float(l.split(",")[1]) for l in out.read_text().strip().splitlines()[1:]]
        np.testing.assert_allclose(xs, [-1, -0.5, 0, 0.5, 1], atol=1e-13)


class TestBmn:
    def test_json_payload(self, tmp_path):
        out = tmp_path / "b.json"
        assert run(["bmn", "--preset", "U", "--M", "6", "--N", "3", "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["B"] == pytest.approx(1.1880751801737366, rel=1e-9)
        assert max(abs(v) for _, v in doc["grid"]) <= 1.0 + 1e-9
        assert len(doc["poly_samples"]) == 801

    def test_csv_per_interval(self, tmp_path):
        out = tmp_path / "b.csv"
        assert run(["bmn", "--preset", "U", "--M", "6", "--N", "3", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "m,local_max,iterations"
        assert len(lines) == 7

    def test_variant_flag(self, tmp_path):
        outs = []
        for variant in ("first", "second"):
            out = tmp_path / f"{variant}.json"
            assert run(["bmn", "--preset", "C2", "--M", "10", "--N", "5",
                        "--variant", variant, "--format", "json", "--out", str(out)]) == 0
            outs.append(json.loads(out.read_text())["B"])
        assert outs[0] == pytest.approx(outs[1], rel=1e-9)


class TestOtherCommands:
    def test_bmnx(self, tmp_path, capsys):
        out = tmp_path / "x.json"
        assert run(["bmnx", "--preset", "U", "--M", "6", "--N", "3", "--x", "0.4",
                    "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["B"] == pytest.approx(1.112, rel=1e-9)

    def test_lebesgue(self, tmp_path):
        out = tmp_path / "leb.json"
        assert run(["lebesgue", "--preset", "U", "--M", "10", "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["lebesgue_constant"] == pytest.approx(29.89995548326033, rel=1e-9)

    def test_bounds(self, tmp_path):
        out = tmp_path / "bounds.json"
        assert run(["bounds", "--preset", "C2", "--M", "14", "--N", "9", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["K_minus"] == 3
        assert doc["log10_lower"] == pytest.approx(
            max(doc["log10_Q_minus"], doc["log10_Q_plus"]), rel=1e-12
        )

    def test_witness(self, tmp_path):
        out = tmp_path / "wit.json"
        assert run(["witness", "--preset", "C2", "--M", "14", "--N", "9", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["K"] == 3
        assert max(abs(v) for _, v in doc["grid"]) <= 1.0 + 1e-9
        assert doc["achieved"] >= 10 ** doc["log10_Q"] * (1 - 1e-9)

    def test_mockcheb(self, tmp_path):
        out = tmp_path / "mc.csv"
        assert run(["mockcheb", "--preset", "C1", "--M", "16", "--N", "8", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,x_star,z_left,z_right"
        for line in lines[1:]:
            _, x_star, z_left, z_right = (float(v) for v in line.split(","))
            assert z_left < x_star < z_right

    def test_lsq(self, tmp_path):
        out = tmp_path / "lsq.json"
        assert run(["lsq", "--preset", "U", "--M", "36", "--N", "6", "--fn", "exp", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["kappa_inf"] >= 1.0
        assert doc["sup_error"] < 1e-4

    def test_exp_points(self, tmp_path):
        cfg = tmp_path / "cfg.toml"
        cfg.write_text('[points]\npresets = ["U"]\nM = 4\ncdf_samples = 9\n')
        out = tmp_path / "data"
        assert run(["exp", "points", "--out", str(out), "--config", str(cfg)]) == 0
        assert (out / "nodes_U.csv").exists()


class TestExitCodes:
    def test_invalid_arguments(self):
        with pytest.raises(SystemExit) as exc:
            run(["bmn", "--preset", "U", "--M", "6"])  # missing --N
        assert exc.value.code == 2

    def test_domain_error_returns_two(self, capsys):
        # N > M is a ValueError inside the solver
        assert run(["bmn", "--preset", "U", "--M", "4", "--N", "9"]) == 2

    def test_invalid_weight_returns_two(self):
        assert run(["nodes", "--alpha", "-2", "--beta", "0", "--M", "4"]) == 2

    def test_numerical_failure_returns_three(self, monkeypatch, capsys):
        def boom(*a, **k):
            raise RemezError("synthetic failure")

        monkeypatch.setattr(cli, "compute_B", boom)
        assert run(["bmn", "--preset", "U", "--M", "6", "--N", "3"]) == 3
        diag = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert diag["error"] == "RemezError"
