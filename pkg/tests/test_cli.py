"""End-to-end CLI behavior: output formats, determinism, exit codes."""

import json
import math

import numpy as np
import pytest

from qwalk1d import WalkSpec
from qwalk1d.cli import main

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [ln for ln in text.strip().splitlines() if ln]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


class TestEvolve:
    def test_hadamard_two_steps_direct(self, capsys):
        code, out, _ = run_cli(capsys, ["evolve", "--hadamard", "--t", "2", "--method", "direct"])
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["x", "re_psi0", "im_psi0", "re_psi1", "im_psi1"]
        probs = {}
        for row in rows:
            x = int(row[0])
            amp2 = sum(float(v) ** 2 for v in row[1:])
            probs[x] = amp2
        assert abs(probs[-2] - 0.25) < 1e-12
        assert abs(probs[0] - 0.5) < 1e-12
        assert abs(probs[2] - 0.25) < 1e-12

    def test_unit_coin_concentrates(self, capsys):
        code, out, _ = run_cli(capsys, ["evolve", "--a-abs", "1", "--t", "3"])
        assert code == 0
        _, rows = parse_csv(out)
        assert [int(r[0]) for r in rows] == [-3, -1, 1, 3]
        nonzero = [r for r in rows if any(abs(float(v)) > 1e-14 for v in r[1:])]
        assert len(nonzero) == 1
        assert int(nonzero[0][0]) == 3
        assert abs(float(nonzero[0][1]) - 1.0) < 1e-14

    def test_methods_agree(self, capsys):
        args = ["--a-abs", "0.6", "--b-arg", "0.4", "--k", "0.2",
                "--c0-abs", "0.8", "--c1-arg", "-0.7", "--t", "9"]
        code1, out1, _ = run_cli(capsys, ["evolve", *args, "--method", "direct"])
        code2, out2, _ = run_cli(capsys, ["evolve", *args, "--method", "closed"])
        assert code1 == code2 == 0
        _, rows1 = parse_csv(out1)
        _, rows2 = parse_csv(out2)
        assert len(rows1) == len(rows2)
        for r1, r2 in zip(rows1, rows2):
            assert r1[0] == r2[0]
            for v1, v2 in zip(r1[1:], r2[1:]):
                assert abs(float(v1) - float(v2)) < 1e-11

    def test_dense_includes_parity_zeros(self, capsys):
        _, sparse, _ = run_cli(capsys, ["evolve", "--hadamard", "--t", "4"])
        _, dense, _ = run_cli(capsys, ["evolve", "--hadamard", "--t", "4", "--dense"])
        _, rows_sparse = parse_csv(sparse)
        _, rows_dense = parse_csv(dense)
        assert len(rows_sparse) == 5
        assert len(rows_dense) == 9
        odd_rows = [r for r in rows_dense if int(r[0]) % 2 != 0]
        assert all(float(v) == 0.0 for r in odd_rows for v in r[1:])

    def test_output_file_is_written_atomically(self, capsys, tmp_path):
        target = tmp_path / "out" / "field.csv"
        code, out, _ = run_cli(
            capsys, ["evolve", "--hadamard", "--t", "2", "--output", str(target)]
        )
        assert code == 0
        assert out == ""
        assert target.exists()
        assert target.read_text().startswith("x,re_psi0")
        assert not list(target.parent.glob("*.tmp"))

    def test_spec_file_input(self, capsys, tmp_path):
        spec_file = tmp_path / "walk.json"
        spec_file.write_text(WalkSpec.hadamard().to_json())
        _, from_file, _ = run_cli(capsys, ["evolve", "--spec", str(spec_file), "--t", "3"])
        _, preset, _ = run_cli(capsys, ["evolve", "--hadamard", "--t", "3"])
        # b is rederived from |a| on load, so agreement is to rounding only.
        _, rows1 = parse_csv(from_file)
        _, rows2 = parse_csv(preset)
        assert [r[0] for r in rows1] == [r[0] for r in rows2]
        for r1, r2 in zip(rows1, rows2):
            for v1, v2 in zip(r1[1:], r2[1:]):
                assert abs(float(v1) - float(v2)) < 1e-12

    def test_renormalize_flag(self, capsys):
        argv = ["evolve", "--a-abs", "0.7071", "--t", "1"]
        code, _, _ = run_cli(capsys, argv)
        assert code == 0  # b is derived, so the coin is normalized either way
        code, _, _ = run_cli(capsys, [*argv, "--renormalize"])
        assert code == 0


class TestDensity:
    def test_columns_and_mass(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["density", "--a-abs", "0.6", "--nu", "0.2", "--alpha", "0.1", "--t", "20"],
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["x", "rho", "rho0", "rho1", "rho_even", "rho_odd"]
        assert len(rows) == 21
        mass = sum(float(r[1]) for r in rows)
        assert abs(mass - 1.0) < 1e-12
        for r in rows:
            assert abs(float(r[1]) - float(r[2]) - float(r[3])) < 1e-12
            assert abs(float(r[1]) - float(r[4]) - float(r[5])) < 1e-12

    def test_paper_signs_flag(self, capsys):
        base = ["density", "--a-abs", "1", "--t", "1"]
        code, out, _ = run_cli(capsys, base)
        assert code == 0
        rows = {int(r[0]): r for r in parse_csv(out)[1]}
        assert abs(float(rows[1][1]) - 1.0) < 1e-12
        code, out, _ = run_cli(capsys, [*base, "--paper-signs"])
        assert code == 0
        rows = {int(r[0]): r for r in parse_csv(out)[1]}
        assert abs(float(rows[1][1]) - 2.0) < 1e-12
        assert abs(float(rows[-1][1]) + 1.0) < 1e-12


class TestMoments:
    def test_single_time(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["moments", "--a-abs", "0.6", "--nu", "0.5", "--t", "4"],
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t", "abs_a", "nu", "alpha", "mean",
                          "second", "variance", "normalized_second"]
        assert len(rows) == 1
        row = rows[0]
        assert int(row[0]) == 4
        var = float(row[5]) - float(row[4]) ** 2
        assert abs(float(row[6]) - var) < 1e-12

    def test_all_times(self, capsys):
        code, out, _ = run_cli(
            capsys, ["moments", "--hadamard", "--t", "6", "--all-times"]
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert [int(r[0]) for r in rows] == [1, 2, 3, 4, 5, 6]
        assert abs(float(rows[3][5]) - 5.0) < 1e-12


class TestPoly:
    def test_exact_row_payload(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["poly", "--t", "6", "--k", "0", "--at", "0.5", "--exact-at", "1/2"],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["t"] == 6 and payload["k"] == 0
        assert payload["coeffs"] == [20, -30, 12, -1]
        assert payload["powers"] == [6, 4, 2, 0]
        assert abs(payload["value"] - 7 / 16) < 1e-15
        assert payload["exact_value"] == "7/16"

    def test_parity_violation_is_bad_input(self, capsys):
        code, _, err = run_cli(capsys, ["poly", "--t", "4", "--k", "1"])
        assert code == 2
        assert "error" in err


class TestFit:
    def test_round_trip_through_files(self, capsys, tmp_path):
        hist_file = tmp_path / "hist.csv"
        code, _, _ = run_cli(
            capsys,
            ["density", "--a-abs", "0.6", "--nu", "0.25", "--alpha", "0.1",
             "--t", "30", "--output", str(hist_file)],
        )
        assert code == 0
        code, out, _ = run_cli(
            capsys, ["fit", "--input", str(hist_file), "--t", "30"]
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["abs_a_hat"] - 0.6) < 1e-3
        assert abs(payload["nu_hat"] - 0.25) < 1e-6
        assert abs(payload["alpha_hat"] - 0.1) < 1e-6
        assert payload["feasible"] is True

    def test_missing_file_is_bad_input(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, ["fit", "--input", str(tmp_path / "nope.csv"), "--t", "5"]
        )
        assert code == 2
        assert "error" in err


class TestVerify:
    def test_passes_and_is_deterministic(self, capsys):
        argv = ["verify", "--tmax", "8", "--n-specs", "3", "--seed", "7"]
        code1, out1, _ = run_cli(capsys, argv)
        code2, out2, _ = run_cli(capsys, argv)
        assert code1 == code2 == 0
        rep1, rep2 = json.loads(out1), json.loads(out2)
        assert rep1["passed"] and rep2["passed"]
        rep1.pop("elapsed_seconds")
        rep2.pop("elapsed_seconds")
        assert rep1 == rep2

    def test_failure_exit_code(self, capsys, monkeypatch):
        import qwalk1d.cli as cli

        monkeypatch.setattr(
            cli, "run_verification",
            lambda **kw: {"passed": False, "checks": [], "documented_divergences": []},
        )
        code, out, _ = run_cli(capsys, ["verify"])
        assert code == 1
        assert json.loads(out)["passed"] is False


class TestSweep:
    def test_moments_grid_hits_ballistic_edge(self, capsys):
        code, out, _ = run_cli(capsys, ["sweep", "--kind", "moments", "--t", "5", "--grid", "5"])
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t", "abs_a", "normalized_second"]
        assert len(rows) == 25
        edge = [r for r in rows if float(r[1]) == 1.0]
        assert len(edge) == 5
        assert all(abs(float(r[2]) - 1.0) < 1e-12 for r in edge)

    def test_variance_endpoints(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["sweep", "--kind", "variance", "--t", "4", "--grid", "3",
             "--nu", "0.5", "--alpha", "0"],
        )
        assert code == 0
        _, rows = parse_csv(out)
        for r in rows:
            if float(r[1]) in (0.0, 1.0):
                assert abs(float(r[4])) < 1e-10

    def test_density_sweep_blocks(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["sweep", "--kind", "density", "--t", "10",
             "--nu-list", "0,0.5", "--a-abs", "0.7071067811865476"],
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["nu", "x", "rho"]
        nus = {float(r[0]) for r in rows}
        assert nus == {0.0, 0.5}
        for nu in nus:
            mass = sum(float(r[2]) for r in rows if float(r[0]) == nu)
            assert abs(mass - 1.0) < 1e-12

    def test_worker_pool_matches_serial(self, capsys, monkeypatch):
        argv = ["sweep", "--kind", "moments", "--t", "6", "--grid", "4"]
        code, serial, _ = run_cli(capsys, argv)
        assert code == 0
        monkeypatch.setenv("QWALK1D_WORKERS", "2")
        code, pooled, _ = run_cli(capsys, argv)
        assert code == 0
        assert pooled == serial


class TestExitCodes:
    def test_bad_coin_weight(self, capsys):
        code, _, err = run_cli(capsys, ["evolve", "--a-abs", "2", "--t", "1"])
        assert code == 2
        assert "error" in err

    def test_no_spec_given(self, capsys):
        code, _, err = run_cli(capsys, ["evolve", "--t", "1"])
        assert code == 2
        assert "error" in err

    def test_resource_ceiling(self, capsys):
        code, _, err = run_cli(
            capsys, ["evolve", "--hadamard", "--t", "200000", "--method", "direct"]
        )
        assert code == 3
        assert "error" in err

    def test_infeasible_symmetry_triple(self, capsys):
        code, _, err = run_cli(
            capsys,
            ["density", "--a-abs", "0.9", "--nu", "0.5", "--alpha", "0.4", "--t", "2"],
        )
        assert code == 2
        assert "error" in err
