"""Sweep configuration, CSV emission, and the self-verification harness."""

import dataclasses

import numpy as np
import pytest

from cransched import (
    Dimensions,
    ExperimentConfig,
    SimParams,
    build_graph,
    generate_instance,
    heu_shd,
    run_algorithm,
    run_sweep,
    run_verification,
    solve_exact,
    sum_rate_benefits,
)
from cransched.experiment import (
    CSV_HEADER,
    ConfigError,
    ResultRow,
    cell_seed,
    parse_sweep_config,
)

GOOD_CONFIG = """\
# two-point user sweep, kept tiny for test speed
sweep = num_users
values = 3, 4
bs = 3
pz = 2
algorithms = opt, heu
num_seeds = 2
seed = 7
shadow_db = 8.0
"""


class TestConfigParsing:
    def test_happy_path(self):
        cfg = parse_sweep_config(GOOD_CONFIG, "demo.cfg")
        assert cfg.sweep == "num_users"
        assert cfg.values == (3.0, 4.0)
        assert cfg.bs == 3
        assert cfg.pz == 2
        assert cfg.algorithms == ("opt", "heu")
        assert cfg.num_seeds == 2
        assert cfg.seed == 7
        assert cfg.shadow_db == 8.0

    def test_comments_and_blank_lines_ignored(self):
        cfg = parse_sweep_config("# lead\n\n" + GOOD_CONFIG + "\n# tail\n")
        assert cfg.values == (3.0, 4.0)

    @pytest.mark.parametrize(
        "mutation, fragment",
        [
            ("sweep = num_users\nsweep = num_pz", "duplicate"),
            ("wibble = 3", "wibble"),
            ("num_seeds = many", "integer"),
            ("num_seeds = 0", "num_seeds"),
        ],
    )
    def test_line_diagnostics(self, mutation, fragment):
        text = GOOD_CONFIG.replace("num_seeds = 2", mutation)
        with pytest.raises(ConfigError, match=fragment) as exc:
            parse_sweep_config(text, "demo.cfg")
        assert "demo.cfg:" in str(exc.value)

    def test_fraction_sweep_requires_pshd(self):
        text = (
            GOOD_CONFIG.replace("sweep = num_users", "sweep = fraction_p")
            .replace("values = 3, 4", "values = 0.3, 0.5")
            + "users = 4\n"
        )
        with pytest.raises(ConfigError, match="pshd"):
            parse_sweep_config(text)

    def test_pshd_requires_p(self):
        text = GOOD_CONFIG.replace("algorithms = opt, heu", "algorithms = pshd")
        with pytest.raises(ConfigError, match="p"):
            parse_sweep_config(text)

    def test_fraction_values_must_be_in_range(self):
        text = (
            GOOD_CONFIG.replace("sweep = num_users", "sweep = fraction_p")
            .replace("values = 3, 4", "values = 0.0, 0.5")
            .replace("algorithms = opt, heu", "algorithms = pshd")
        )
        with pytest.raises(ConfigError):
            parse_sweep_config(text)

    def test_missing_required_key(self):
        text = GOOD_CONFIG.replace("pz = 2\n", "")
        with pytest.raises(ConfigError, match="pz"):
            parse_sweep_config(text)

    def test_empty_values_rejected(self):
        text = GOOD_CONFIG.replace("values = 3, 4", "values =")
        with pytest.raises(ConfigError):
            parse_sweep_config(text)


class TestCellSeeds:
    def test_deterministic(self):
        assert cell_seed(0, 1, 2) == cell_seed(0, 1, 2)

    def test_distinct_across_cells(self):
        seen = {cell_seed(0, vi, si) for vi in range(4) for si in range(50)}
        assert len(seen) == 200

    def test_uint64_range(self):
        s = cell_seed(3, 2, 1)
        assert 0 <= s < 2**64


class TestRunAlgorithm:
    def test_dispatch_matches_direct_calls(self, rng):
        dims = Dimensions(4, 3, 2)
        inst = generate_instance(dims, SimParams(seed=1))
        g = build_graph(dims, sum_rate_benefits(inst))
        assert run_algorithm("opt", g).weight == solve_exact(g).weight
        assert run_algorithm("heu", g).weight == heu_shd(g).weight

    def test_unknown_algorithm(self, rng):
        dims = Dimensions(3, 3, 1)
        g = build_graph(dims, sum_rate_benefits(generate_instance(dims, SimParams(seed=1))))
        with pytest.raises(ValueError):
            run_algorithm("simplex", g)

    def test_pshd_needs_fraction(self):
        dims = Dimensions(3, 3, 1)
        g = build_graph(dims, sum_rate_benefits(generate_instance(dims, SimParams(seed=1))))
        with pytest.raises(ValueError):
            run_algorithm("pshd", g)


class TestResultRow:
    def test_error_rows_have_empty_rate(self):
        row = ResultRow(
            seed=9, num_users=4, num_bs=3, num_pz=2, shadow_sigma_db=8.0,
            p=None, algorithm="opt", sum_rate_bps_hz=None, solver_nodes=0,
            runtime_ms=None,
        )
        fields = row.to_csv(timing=True).split(",")
        assert len(fields) == len(CSV_HEADER.split(","))
        assert fields[7] == ""
        assert fields[9] == ""

    def test_timing_suppression(self):
        row = ResultRow(
            seed=9, num_users=4, num_bs=3, num_pz=2, shadow_sigma_db=8.0,
            p=0.3, algorithm="pshd", sum_rate_bps_hz=1.25, solver_nodes=0,
            runtime_ms=4.2,
        )
        assert row.to_csv(timing=True).endswith("4.200")
        assert row.to_csv(timing=False).endswith(",")


class TestRunSweep:
    def test_csv_layout_and_row_count(self, tmp_path):
        cfg = parse_sweep_config(GOOD_CONFIG)
        out = tmp_path / "sweep.csv"
        summary = run_sweep(cfg, out_path=out, check=True)
        lines = out.read_text().strip().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 2 * 2 * 2  # values x seeds x algorithms
        assert summary.num_rows == 8
        for line in lines[1:]:
            assert len(line.split(",")) == 10

    def test_deterministic_without_timing(self, tmp_path):
        cfg = parse_sweep_config(GOOD_CONFIG)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_sweep(cfg, out_path=a, timing=False)
        run_sweep(cfg, out_path=b, timing=False)
        assert a.read_bytes() == b.read_bytes()

    def test_blanking_counters(self, tmp_path):
        text = GOOD_CONFIG.replace("algorithms = opt, heu", "algorithms = opt, blanking")
        cfg = parse_sweep_config(text)
        summary = run_sweep(cfg, out_path=tmp_path / "s.csv")
        assert summary.blanking_runs == 4
        assert 0 <= summary.blanking_full <= summary.blanking_runs

    def test_check_requires_opt(self, tmp_path):
        text = GOOD_CONFIG.replace("algorithms = opt, heu", "algorithms = heu")
        cfg = parse_sweep_config(text)
        with pytest.raises(ValueError):
            run_sweep(cfg, out_path=tmp_path / "s.csv", check=True)

    def test_infeasible_cells_still_emit_rows(self, tmp_path):
        text = GOOD_CONFIG.replace("values = 3, 4", "values = 2, 3")
        cfg = parse_sweep_config(text)
        out = tmp_path / "s.csv"
        run_sweep(cfg, out_path=out, check=True)  # U=2 < B=3 must not trip the check
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 1 + 8

    def test_parallel_matches_serial(self, tmp_path):
        cfg = parse_sweep_config(GOOD_CONFIG)
        a, b = tmp_path / "serial.csv", tmp_path / "par.csv"
        run_sweep(cfg, out_path=a, timing=False)
        run_sweep(cfg, out_path=b, timing=False, jobs=2)
        assert a.read_bytes() == b.read_bytes()


class TestVerification:
    def test_trusted_solver_passes(self):
        report = run_verification(trials=25, seed=3)
        assert report.passed
        assert report.trials == 25
        assert not report.mismatches
        assert report.max_deviation <= 1e-9

    def test_zero_trials_is_usage_error(self):
        with pytest.raises(ValueError):
            run_verification(trials=0)

    def test_oversized_bounds_rejected(self):
        with pytest.raises(ValueError):
            run_verification(trials=5, max_users=40)

    def test_corrupted_solver_is_caught(self):
        def dishonest(g):
            res = solve_exact(g)
            return dataclasses.replace(res, weight=res.weight * 1.01)

        report = run_verification(trials=10, seed=3, solver=dishonest)
        assert not report.passed
        assert report.mismatches
