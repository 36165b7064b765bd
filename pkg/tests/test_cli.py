import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qwscramble.cli import main, manifest_path_for, parse_angle


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    return rows[0], rows[1:]


def read_manifest(out_path):
    with open(manifest_path_for(str(out_path)), encoding="utf-8") as handle:
        return json.load(handle)


class TestAngleParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0.25pi", math.pi / 4),
            ("pi", math.pi),
            ("-0.5pi", -math.pi / 2),
            ("1.5PI", 1.5 * math.pi),
            ("0.785", 0.785),
            ("2", 2.0),
        ],
    )
    def test_accepted_forms(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("text", ["bogus", "pipi", "0.25tau", ""])
    def test_rejected_forms(self, text):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_angle(text)


class TestDispersionCommand:
    def test_identity_coin_velocity_column(self, tmp_path):
        out = tmp_path / "disp.csv"
        assert main(["dispersion", "--theta", "0", "--k-points", "65", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["k", "omega", "v_g"]
        assert len(rows) == 65
        assert all(abs(abs(float(r[2])) - 1.0) < 1e-12 for r in rows)
        manifest = read_manifest(out)
        assert manifest["extras"]["butterfly_velocity"] == pytest.approx(1.0)
        assert manifest["extras"]["localization_length"] == "unbounded"

    def test_half_pi_dispersion_at_k0(self, tmp_path):
        out = tmp_path / "disp.csv"
        assert main(["dispersion", "--theta", "0.5pi", "--k-points", "65", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        mid = rows[32]  # k = 0 on the symmetric 65-point grid
        assert float(mid[0]) == 0.0
        assert float(mid[1]) == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_malformed_theta_exits_2(self, tmp_path):
        assert main(["dispersion", "--theta", "nope", "--out", str(tmp_path / "x.csv")]) == 2

    def test_out_of_domain_theta_exits_2(self, tmp_path):
        assert main(["dispersion", "--theta", "3.0", "--out", str(tmp_path / "x.csv")]) == 2


class TestEvolveCommand:
    def test_zero_width_ensemble_and_schema(self, tmp_path):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "evolve",
                "--theta", "0.25pi",
                "--sites", "20",
                "--steps", "8",
                "--disorder", "spatial",
                "--strength", "0",
                "--realizations", "5",
                "--initial", "up",
                "--out", str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out)
        assert header == ["t", "x", "p_mean", "p_stderr"]
        assert len(rows) == 9 * 20
        assert all(float(r[3]) == 0.0 for r in rows)
        xs = sorted({int(r[1]) for r in rows})
        assert xs == list(range(-10, 10))
        by_t = {}
        for r in rows:
            by_t.setdefault(int(r[0]), 0.0)
            by_t[int(r[0])] += float(r[2])
        assert all(abs(total - 1.0) < 1e-9 for total in by_t.values())

        ipr_header, ipr_rows = read_csv(tmp_path / "traj.ipr.csv")
        assert ipr_header == ["t", "ipr_mean", "ipr_stderr"]
        assert float(ipr_rows[0][1]) == 1.0  # localized initial state
        assert all(float(r[2]) == 0.0 for r in ipr_rows)

        manifest = read_manifest(out)
        assert manifest["outputs"] == [str(out), str(tmp_path / "traj.ipr.csv")]

    def test_odd_sites_exit_2(self, tmp_path):
        assert main(["evolve", "--sites", "19", "--steps", "4", "--out", str(tmp_path / "t.csv")]) == 2


class TestOtocCommand:
    def test_grid_schema_and_structure(self, tmp_path):
        out = tmp_path / "otoc.csv"
        rc = main(
            [
                "otoc",
                "--theta", "0",
                "--sites", "40",
                "--steps", "15",
                "--pairs", "xz,xx,zz",
                "--out", str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out)
        assert header == ["pair", "t", "l", "c_mean", "c_stderr"]
        assert len(rows) == 3 * 16 * 40
        for r in rows:
            pair, t, l, c = r[0], int(r[1]), int(r[2]), float(r[3])
            if abs(l) > t:
                assert c == 0.0
            if pair == "xx" and t == 0:
                assert c < 1e-15  # rounding dust from the 1/sqrt(2) eigenvectors
            if pair == "zz":
                assert c == 0.0  # diagonal probe commutes with the shifted projectors
        manifest = read_manifest(out)
        assert manifest["normalization"] == "1/D"
        for pair in ("xz", "xx"):
            slope = manifest["extras"]["front_velocity"][pair]["slope"]
            assert abs(slope - 1.0) <= 0.02
        assert manifest["extras"]["front_velocity"]["zz"] is None  # identically zero grid

    def test_empty_pairs_exit_2(self, tmp_path):
        assert main(["otoc", "--pairs", ",", "--out", str(tmp_path / "o.csv")]) == 2

    def test_bad_pair_exit_2(self, tmp_path):
        assert main(["otoc", "--pairs", "xw", "--out", str(tmp_path / "o.csv")]) == 2


class TestKrylovCommand:
    def test_gram_odd_entries_zero(self, tmp_path):
        out = tmp_path / "gram.csv"
        rc = main(
            [
                "krylov",
                "--theta", "0.166666pi",
                "--sites", "40",
                "--steps", "12",
                "--emit", "gram",
                "--out", str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out)
        assert header == ["n", "m", "value"]
        for r in rows:
            if (int(r[0]) - int(r[1])) % 2 == 1:
                assert float(r[2]) == 0.0

    def test_complexity_clean_first_step(self, tmp_path):
        out = tmp_path / "k.csv"
        rc = main(["krylov", "--theta", "0.25pi", "--sites", "40", "--steps", "10", "--out", str(out)])
        assert rc == 0
        header, rows = read_csv(out)
        assert header == ["t", "k_mean", "k_stderr"]
        assert float(rows[0][1]) == 0.0
        assert float(rows[1][1]) == pytest.approx(1.0, abs=1e-12)

    def test_identity_coin_complexity_equals_time(self, tmp_path):
        out = tmp_path / "k.csv"
        assert main(["krylov", "--theta", "0", "--sites", "30", "--steps", "9", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        assert [float(r[1]) for r in rows] == [float(t) for t in range(10)]

    def test_phi_and_norms_emissions(self, tmp_path):
        for emit, header in [("phi", ["n", "t", "value"]), ("norms", ["n", "norm_A"])]:
            out = tmp_path / f"{emit}.csv"
            rc = main(
                ["krylov", "--theta", "0.2pi", "--sites", "24", "--steps", "6", "--emit", emit, "--out", str(out)]
            )
            assert rc == 0
            got_header, rows = read_csv(out)
            assert got_header == header
            assert rows

    def test_gram_emission_requires_single_realization(self, tmp_path):
        rc = main(
            [
                "krylov",
                "--emit", "gram",
                "--sites", "20",
                "--steps", "4",
                "--realizations", "3",
                "--out", str(tmp_path / "g.csv"),
            ]
        )
        assert rc == 2

    def test_degeneracy_maps_to_exit_3(self, tmp_path, monkeypatch):
        from qwscramble import cli
        from qwscramble.errors import NumericalDegeneracyError

        def explode(params, out, workers):
            raise NumericalDegeneracyError("synthetic")

        monkeypatch.setitem(cli.RUNNERS, "krylov", explode)
        rc = main(["krylov", "--sites", "20", "--steps", "4", "--out", str(tmp_path / "g.csv")])
        assert rc == 3


class TestManifestRerun:
    def test_rerun_reproduces_bytes(self, tmp_path):
        out = tmp_path / "otoc.csv"
        args = [
            "otoc",
            "--theta", "0.25pi",
            "--sites", "30",
            "--steps", "10",
            "--disorder", "temporal",
            "--strength", "0.5pi",
            "--realizations", "6",
            "--seed", "99",
            "--pairs", "xx,zz",
            "--out", str(out),
        ]
        assert main(args) == 0
        original = out.read_bytes()
        rerun_dir = tmp_path / "rerun"
        rc = main(["rerun", "--manifest", manifest_path_for(str(out)), "--out-dir", str(rerun_dir)])
        assert rc == 0
        assert (rerun_dir / "otoc.csv").read_bytes() == original

    def test_rerun_evolve_includes_companion(self, tmp_path):
        out = tmp_path / "traj.csv"
        assert main(["evolve", "--sites", "16", "--steps", "6", "--realizations", "2", "--out", str(out)]) == 0
        rerun_dir = tmp_path / "again"
        assert main(["rerun", "--manifest", manifest_path_for(str(out)), "--out-dir", str(rerun_dir)]) == 0
        assert (rerun_dir / "traj.csv").read_bytes() == out.read_bytes()
        assert (rerun_dir / "traj.ipr.csv").read_bytes() == (tmp_path / "traj.ipr.csv").read_bytes()

    def test_missing_manifest_exits_2(self, tmp_path):
        assert main(["rerun", "--manifest", str(tmp_path / "absent.json")]) == 2


class TestWorkerDeterminism:
    def test_worker_counts_produce_identical_bytes(self, tmp_path):
        base = [
            "otoc",
            "--theta", "0.25pi",
            "--sites", "40",
            "--steps", "16",
            "--disorder", "spatial",
            "--strength", "0.5pi",
            "--realizations", "8",
            "--seed", "7",
            "--pairs", "xx",
        ]
        out1 = tmp_path / "w1.csv"
        out8 = tmp_path / "w8.csv"
        assert main(base + ["--workers", "1", "--out", str(out1)]) == 0
        assert main(base + ["--workers", "8", "--out", str(out8)]) == 0
        assert out1.read_bytes() == out8.read_bytes()


class TestEntryPoint:
    def test_module_invocation_and_version(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qwscramble.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "qwscramble" in proc.stdout

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qwscramble.cli", "otoc"],  # missing --out
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
