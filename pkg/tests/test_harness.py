"""Sweeps, bisection, scaling fits, exports and the CLI surface."""

import json
import math
import time

import numpy as np
import pytest

from bsl.cli import main as cli_main
from bsl.errors import BracketError, ConfigError, DomainError
from bsl.harness import (
    ExperimentConfig,
    SweepResult,
    default_mode_panel,
    export,
    read_sweep_csv,
    run_experiment,
    scaling_fit,
    stability_predicate,
    threshold_bisect,
)


class TestThresholdBisect:
    def test_certified_point_is_stable(self):
        nu = 1e-3
        assert stability_predicate(nu, -(nu ** (1 / 3)) / 100.0)

    def test_constant_true_predicate(self):
        result = threshold_bisect(1e-2, tol=0.1, predicate=lambda a: True)
        assert not result.transition_found
        assert result.alpha_star == -1.0

    def test_synthetic_transition(self):
        boundary = -0.37
        result = threshold_bisect(1e-2, tol=1e-4, predicate=lambda a: a > boundary)
        assert result.transition_found
        assert result.alpha_star == pytest.approx(boundary, abs=2e-4)
        lo, hi = result.bracket
        # invariant: (unstable, stable) endpoints
        assert lo <= boundary < hi

    def test_non_bracketing_rejected(self):
        with pytest.raises(BracketError):
            threshold_bisect(1e-2, predicate=lambda a: False)

    def test_deterministic(self):
        r1 = threshold_bisect(1e-2, tol=1e-3, predicate=lambda a: a > -0.123456)
        r2 = threshold_bisect(1e-2, tol=1e-3, predicate=lambda a: a > -0.123456)
        assert r1.alpha_star == r2.alpha_star and r1.bracket == r2.bracket

    def test_panel_layout(self):
        panel = default_mode_panel(1e-3)
        assert len(panel) == 12
        assert {m.k for m in panel} == {1, 2, 4}


class TestScalingFit:
    def test_exact_power_law(self):
        nus = [1e-2, 3e-3, 1e-3, 3e-4, 1e-4]
        pairs = [(nu, -(nu ** (1 / 3)) / 100.0) for nu in nus]
        fit = scaling_fit(pairs)
        assert fit.exponent == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert fit.prefactor == pytest.approx(1.0 / 100.0, rel=1e-10)

    def test_noisy_monte_carlo(self):
        rng = np.random.default_rng(31)
        nus = np.geomspace(1e-4, 1e-2, 8)
        slopes = []
        for _ in range(200):
            noise = 1.0 + 0.05 * rng.standard_normal(nus.size)
            pairs = [(nu, -(nu ** (1 / 3)) / 100.0 * n) for nu, n in zip(nus, noise)]
            slopes.append(scaling_fit(pairs).exponent)
        assert all(0.28 <= s <= 0.39 for s in slopes)

    def test_rejects_nonnegative(self):
        with pytest.raises(DomainError):
            scaling_fit([(1e-2, -0.1), (1e-3, 0.0), (1e-4, -0.01), (1e-5, -0.005)])

    def test_rejects_short_input(self):
        with pytest.raises(ConfigError):
            scaling_fit([(1e-2, -0.1), (1e-3, -0.05)])


class TestRunExperiment:
    def test_eigen_dichotomy_table(self):
        cfg = ExperimentConfig(command="eigen", params={
            "alphas": [-1.0, 0.0, 1.0], "nu": 0.0, "mu": 0.0,
            "modes": [[1, 0.0], [2, 1.0]]})
        result = run_experiment(cfg)
        assert len(result.rows) == 6
        table = {(row["alpha"], row["k"]): row for row in result.rows}
        assert table[(-1.0, 1)]["classification"] == "exponentially_unstable"
        assert table[(-1.0, 1)]["lambda1_re"] == pytest.approx(1.0)
        assert table[(0.0, 1)]["classification"] == "marginal"
        assert table[(1.0, 1)]["classification"] == "stable"
        assert table[(1.0, 1)]["lambda1_re"] == pytest.approx(0.0, abs=1e-14)

    def test_empty_sweep(self):
        cfg = ExperimentConfig(command="eigen", params={"alphas": []})
        result = run_experiment(cfg)
        assert result.rows == [] and result.provenance["n_points"] == 0

    def test_simulate_batch(self):
        cfg = ExperimentConfig(command="simulate", params={
            "nu": 0.05, "epsilon": 1e-5,
            "profile": {"kind": "affine", "slope": 0.001},
            "grid": {"K": 6, "J": 6, "Ly": 2 * math.pi}, "t_end": 0.5,
            "seeds": [1, 2, 3]})
        result = run_experiment(cfg)
        assert len(result.rows) == 3
        assert [row["seed"] for row in result.rows] == [1, 2, 3]
        assert all("ledger_omega_neq" in row for row in result.rows)

    def test_point_failure_recorded_not_raised(self):
        cfg = ExperimentConfig(command="eigen", params={
            "alphas": [1.0], "modes": [[0, 0.0], [1, 0.0]]})  # k=0 is invalid
        result = run_experiment(cfg)
        assert len(result.failed_rows) == 1
        assert "DomainError" in result.failed_rows[0]["error"]
        assert len(result.rows) == 2

    def test_parallel_matches_serial(self):
        params = {"alphas": [-2.0, -1.0, 0.5, 1.5], "nu": 0.0, "mu": 0.1,
                  "modes": [[1, 0.0], [3, 2.0]]}
        serial = run_experiment(ExperimentConfig(command="eigen", params=params))
        parallel = run_experiment(ExperimentConfig(command="eigen", params=params, jobs=4))
        assert serial.rows == parallel.rows

    def test_admit_sweep(self):
        cfg = ExperimentConfig(command="admit", params={
            "profile": {"kind": "trigonometric", "terms": [[1e-4, 1.0, 0.0]]},
            "orders": [0, 2], "nus": [1e-2, 1e-3]})
        result = run_experiment(cfg)
        assert len(result.rows) == 4
        assert all("admissible" in row for row in result.rows)


class TestExport:
    def _tiny_result(self):
        return SweepResult(command="eigen", rows=[
            {"index": 0, "alpha": -1.0, "lambda1_re": 1.0, "stable": False}])

    def test_single_row(self, tmp_path):
        path = tmp_path / "out.csv"
        export(self._tiny_result(), path)
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 2
        assert lines[0].startswith("index,")

    def test_round_trip(self, tmp_path):
        cfg = ExperimentConfig(command="exponents", params={"alphas": [-2.0, 0.25]})
        result = run_experiment(cfg)
        path = tmp_path / "out.csv"
        export(result, path)
        rows = read_sweep_csv(path)
        assert len(rows) == len(result.rows)
        for got, want in zip(rows, result.rows):
            for key, val in want.items():
                if isinstance(val, float):
                    assert got[key] == val, key
                elif isinstance(val, bool):
                    assert got[key] is val, key

    def test_large_export_fast(self, tmp_path):
        rows = [{"index": i, "a": float(i) * 0.1, "b": i % 2 == 0, "c": f"point{i}"}
                for i in range(10_000)]
        result = SweepResult(command="eigen", rows=rows)
        start = time.monotonic()
        export(result, tmp_path / "big.csv")
        elapsed = time.monotonic() - start
        assert elapsed < 5.0
        assert len(read_sweep_csv(tmp_path / "big.csv")) == 10_000

    def test_deterministic_bytes(self, tmp_path):
        params = {"alphas": [-1.0, 1.0], "nu": 0.0, "mu": 0.0}
        blobs = []
        for name in ("a.csv", "b.csv"):
            result = run_experiment(ExperimentConfig(command="eigen", params=params,
                                                     seed=7))
            export(result, tmp_path / name)
            blobs.append((tmp_path / name).read_bytes())
        assert blobs[0] == blobs[1]


class TestCli:
    def _write_config(self, tmp_path, payload, name="cfg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    def test_eigen_success(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, {"alphas": [-1.0, 1.0],
                                            "nu": 0.0, "mu": 0.0})
        code = cli_main(["eigen", "--config", cfg, "--out", str(tmp_path / "out")])
        assert code == 0
        assert (tmp_path / "out" / "result.csv").exists()
        assert (tmp_path / "out" / "run_meta.json").exists()

    def test_missing_config_file(self, tmp_path):
        assert cli_main(["eigen", "--config", str(tmp_path / "nope.json")]) == 2

    def test_command_mismatch(self, tmp_path):
        cfg = self._write_config(tmp_path, {"command": "mode", "alphas": [1.0]})
        assert cli_main(["eigen", "--config", cfg]) == 2

    def test_bad_params_config_error(self, tmp_path):
        cfg = self._write_config(tmp_path, {})  # eigen needs alphas
        assert cli_main(["eigen", "--config", cfg]) in (2, 3)

    def test_instability_exit_code(self, tmp_path):
        cfg = self._write_config(tmp_path, {
            "nu": 0.0, "epsilon": 1e-9, "shear": False, "t_end": 40.0,
            "profile": {"kind": "affine", "slope": -1.0},
            "grid": {"K": 6, "J": 6, "Ly": 2 * math.pi},
            "diag_interval": 0.5,
            "init_spec": {"type": "single_mode", "k": 1, "j": 0,
                          "amp_omega": 1.0, "amp_theta": 0.0}})
        assert cli_main(["simulate", "--config", cfg]) == 4

    def test_numerical_failure_exit_code(self, tmp_path):
        # scaling with a nonnegative alpha_star raises a numerical error
        cfg = self._write_config(tmp_path, {
            "pairs": [[1e-2, -0.1], [1e-3, 0.1], [1e-4, -0.01], [1e-5, -0.001]]})
        assert cli_main(["scaling", "--config", cfg]) == 3

    def test_simulate_artifacts(self, tmp_path):
        cfg = self._write_config(tmp_path, {
            "nu": 0.05, "epsilon": 1e-5, "t_end": 0.5, "snapshots": True,
            "profile": {"kind": "affine", "slope": 0.001},
            "grid": {"K": 6, "J": 6, "Ly": 2 * math.pi}, "seeds": [4]})
        out = tmp_path / "simout"
        assert cli_main(["simulate", "--config", cfg, "--out", str(out)]) == 0
        assert (out / "timeseries_seed4.csv").exists()
        assert (out / "snapshot_seed4.bin").exists()
        assert (out / "snapshot_seed4.json").exists()

    def test_scaling_roundtrip(self, tmp_path, capsys):
        pairs = [[nu, -(nu ** (1 / 3)) / 100.0]
                 for nu in (1e-2, 3e-3, 1e-3, 3e-4, 1e-4)]
        cfg = self._write_config(tmp_path, {"pairs": pairs})
        out = tmp_path / "fitout"
        assert cli_main(["scaling", "--config", cfg, "--out", str(out)]) == 0
        rows = read_sweep_csv(out / "result.csv")
        assert rows[0]["exponent"] == pytest.approx(1 / 3, abs=1e-12)
