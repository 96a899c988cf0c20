"""Multi-seed sweep machinery and the solver-vs-oracle verification runner.

A sweep walks one variable (user count, zone count, or the pruning
fraction), regenerates a fresh network per (value, seed) cell, runs the
requested schedulers on it, and appends one CSV row per scheduler run.
Row order is fully deterministic: values outermost, then seeds, then
algorithms in their configured order, regardless of worker count.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exact import (
    STATUS_INFEASIBLE,
    SolveResult,
    brute_force_schedule,
    solve_exact,
    solve_exact_blanking,
)
from .graph import SchedulingGraph, build_graph
from .heuristics import HeuristicParams, heu_shd, p_shd
from .model import BenefitTensor, Dimensions, sum_rate_benefits, validate_schedule
from .simulator import SimParams, generate_instance

CSV_HEADER = "seed,U,B,Z,shadow_sigma_db,p,algorithm,sum_rate_bps_hz,solver_nodes,runtime_ms"

ALGORITHMS = ("opt", "heu", "pshd", "blanking")
SWEEP_VARIABLES = ("num_users", "num_pz", "fraction_p")

# SimParams fields that may be overridden from a sweep config.
_SIM_OVERRIDE_KEYS = (
    "cell_to_cell_m",
    "carrier_hz",
    "bs_height_m",
    "user_height_m",
    "bandwidth_hz",
    "power_dbm_per_hz",
    "noise_dbm_per_hz",
    "sinr_gap_db",
    "d_min_m",
)


class ConfigError(ValueError):
    """Bad sweep configuration; message carries file:line where possible."""


class CheckFailure(AssertionError):
    """A --check dominance assertion failed during a sweep."""


def run_algorithm(
    name: str,
    graph: SchedulingGraph,
    p: float | None = None,
    exact_on_pruned: bool = False,
) -> SolveResult:
    """Dispatch one scheduler by its CLI name."""
    if name == "opt":
        return solve_exact(graph)
    if name == "heu":
        return heu_shd(graph)
    if name == "blanking":
        return solve_exact_blanking(graph)
    if name == "pshd":
        if p is None:
            raise ValueError("algorithm 'pshd' needs a fraction p")
        return p_shd(graph, HeuristicParams(p, exact_on_pruned))
    raise ValueError(f"unknown algorithm {name!r} (choose from {ALGORITHMS})")


@dataclass(frozen=True)
class ExperimentConfig:
    sweep: str
    values: tuple
    bs: int
    pz: int
    users: int
    algorithms: tuple[str, ...]
    shadow_db: float = 8.0
    p: float | None = None
    num_seeds: int = 100
    seed: int = 0
    fading: str = "rayleigh"
    out: str | None = None
    allow_any_b: bool = False
    exact_on_pruned: bool = False
    sim_overrides: tuple[tuple[str, float], ...] = ()


@dataclass(frozen=True)
class ResultRow:
    seed: int
    num_users: int
    num_bs: int
    num_pz: int
    shadow_sigma_db: float
    p: float | None
    algorithm: str
    sum_rate_bps_hz: float | None  # None = the run errored (noted on stderr)
    solver_nodes: int
    runtime_ms: float | None

    def to_csv(self, timing: bool) -> str:
        rate = "" if self.sum_rate_bps_hz is None else repr(self.sum_rate_bps_hz)
        ms = ""
        if timing and self.runtime_ms is not None:
            ms = f"{self.runtime_ms:.3f}"
        p = "" if self.p is None else repr(self.p)
        return (
            f"{self.seed},{self.num_users},{self.num_bs},{self.num_pz},"
            f"{self.shadow_sigma_db!r},{p},{self.algorithm},{rate},"
            f"{self.solver_nodes},{ms}"
        )


@dataclass(frozen=True)
class SweepSummary:
    out_path: str
    num_rows: int
    blanking_runs: int
    blanking_full: int
    warnings: tuple[str, ...]


# --------------------------------------------------------------------------
# config file parsing


def _split_list(value: str) -> list[str]:
    return value.replace(",", " ").split()


def _as_int(value: str, where: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{where}: expected an integer, got {value!r}") from None


def _as_float(value: str, where: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{where}: expected a number, got {value!r}") from None


def _as_bool(value: str, where: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"{where}: expected true/false, got {value!r}")


_KNOWN_KEYS = frozenset(
    (
        "sweep",
        "values",
        "users",
        "bs",
        "pz",
        "shadow_db",
        "algorithms",
        "p",
        "num_seeds",
        "seed",
        "fading",
        "out",
        "allow_any_b",
        "exact_on_pruned",
    )
    + _SIM_OVERRIDE_KEYS
)


def parse_sweep_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse the line-oriented `key = value` sweep format.

    Lines are `key = value`; `#` starts a comment; blank lines are ignored.
    Errors name the offending line.  Keys: sweep, values, users, bs, pz,
    shadow_db, algorithms, p, num_seeds, seed, fading, out, allow_any_b,
    exact_on_pruned, plus any SimParams numeric field to override it.
    """
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)

    def where(key: str) -> str:
        return f"{source}:{entries[key][1]}"

    def require(key: str) -> str:
        if key not in entries:
            raise ConfigError(f"{source}: missing required key {key!r}")
        return entries[key][0]

    sweep = require("sweep")
    if sweep not in SWEEP_VARIABLES:
        raise ConfigError(f"{where('sweep')}: sweep must be one of {SWEEP_VARIABLES}")

    raw_values = _split_list(require("values"))
    if not raw_values:
        raise ConfigError(f"{where('values')}: empty value list")
    if sweep == "fraction_p":
        values = tuple(_as_float(v, where("values")) for v in raw_values)
        bad = [v for v in values if not 0.0 < v <= 1.0]
        if bad:
            raise ConfigError(f"{where('values')}: p values outside (0, 1]: {bad}")
    else:
        values = tuple(_as_int(v, where("values")) for v in raw_values)
        if any(v < 1 for v in values):
            raise ConfigError(f"{where('values')}: values must be >= 1")

    algorithms = tuple(_split_list(require("algorithms")))
    if not algorithms:
        raise ConfigError(f"{where('algorithms')}: empty algorithm list")
    unknown = [a for a in algorithms if a not in ALGORITHMS]
    if unknown:
        raise ConfigError(f"{where('algorithms')}: unknown algorithms {unknown}")
    if len(set(algorithms)) != len(algorithms):
        raise ConfigError(f"{where('algorithms')}: duplicate algorithm")

    bs = _as_int(require("bs"), where("bs"))
    pz = _as_int(require("pz"), where("pz")) if sweep != "num_pz" else 0
    users = _as_int(require("users"), where("users")) if sweep != "num_users" else 0

    p = _as_float(entries["p"][0], where("p")) if "p" in entries else None
    if p is not None and not 0.0 < p <= 1.0:
        raise ConfigError(f"{where('p')}: p must be in (0, 1]")
    if "pshd" in algorithms and sweep != "fraction_p" and p is None:
        raise ConfigError(f"{source}: algorithm 'pshd' needs key 'p' (or sweep = fraction_p)")
    if sweep == "fraction_p" and "pshd" not in algorithms:
        raise ConfigError(f"{source}: sweep = fraction_p requires 'pshd' among algorithms")

    num_seeds = _as_int(entries["num_seeds"][0], where("num_seeds")) if "num_seeds" in entries else 100
    if num_seeds < 1:
        raise ConfigError(f"{where('num_seeds')}: num_seeds must be >= 1")

    fading = entries["fading"][0] if "fading" in entries else "rayleigh"
    if fading not in ("rayleigh", "none"):
        raise ConfigError(f"{where('fading')}: fading must be rayleigh or none")

    overrides = tuple(
        (key, _as_float(entries[key][0], where(key)))
        for key in _SIM_OVERRIDE_KEYS
        if key in entries
    )

    return ExperimentConfig(
        sweep=sweep,
        values=values,
        bs=bs,
        pz=pz,
        users=users,
        algorithms=algorithms,
        shadow_db=_as_float(entries["shadow_db"][0], where("shadow_db")) if "shadow_db" in entries else 8.0,
        p=p,
        num_seeds=num_seeds,
        seed=_as_int(entries["seed"][0], where("seed")) if "seed" in entries else 0,
        fading=fading,
        out=entries["out"][0] if "out" in entries else None,
        allow_any_b=_as_bool(entries["allow_any_b"][0], where("allow_any_b")) if "allow_any_b" in entries else False,
        exact_on_pruned=_as_bool(entries["exact_on_pruned"][0], where("exact_on_pruned")) if "exact_on_pruned" in entries else False,
        sim_overrides=overrides,
    )


def load_sweep_config(path: str | Path) -> ExperimentConfig:
    return parse_sweep_config(Path(path).read_text(), str(path))


# --------------------------------------------------------------------------
# sweep execution


def cell_seed(root: int, value_index: int, seed_index: int) -> int:
    """Derived instance seed for one sweep cell; stable across runs and
    recorded in the CSV so any row can be regenerated in isolation."""
    seq = np.random.SeedSequence([root, value_index, seed_index])
    return int(seq.generate_state(1, np.uint64)[0])


def _cell_dims(cfg: ExperimentConfig, value) -> Dimensions:
    if cfg.sweep == "num_users":
        return Dimensions(int(value), cfg.bs, cfg.pz)
    if cfg.sweep == "num_pz":
        return Dimensions(cfg.users, cfg.bs, int(value))
    return Dimensions(cfg.users, cfg.bs, cfg.pz)


def _run_cell(
    cfg: ExperimentConfig, value_index: int, seed_index: int, check: bool
) -> tuple[list[ResultRow], int, int, list[str]]:
    """All algorithm runs for one (value, seed) cell."""
    value = cfg.values[value_index]
    dims = _cell_dims(cfg, value)
    seed = cell_seed(cfg.seed, value_index, seed_index)
    params = SimParams(
        seed=seed,
        shadow_sigma_db=cfg.shadow_db,
        fading=cfg.fading,
        **dict(cfg.sim_overrides),
    )
    inst = generate_instance(dims, params, allow_any_b=cfg.allow_any_b)
    graph = build_graph(dims, sum_rate_benefits(inst))

    # In a fraction_p sweep the x value goes on every row so baselines can
    # be plotted against p; otherwise only pshd rows carry their p.
    sweep_p = float(value) if cfg.sweep == "fraction_p" else None

    rows: list[ResultRow] = []
    warnings: list[str] = []
    weights: dict[str, float] = {}
    opt_exists = False
    blanking_runs = blanking_full = 0
    for algo in cfg.algorithms:
        p = sweep_p if cfg.sweep == "fraction_p" else (cfg.p if algo == "pshd" else None)
        try:
            result = run_algorithm(algo, graph, p, cfg.exact_on_pruned)
        except ValueError as e:
            warnings.append(f"{algo} failed on value={value} seed={seed}: {e}")
            rows.append(
                ResultRow(seed, dims.num_users, dims.num_bs, dims.num_pz,
                          cfg.shadow_db, p, algo, None, 0, None)
            )
            continue
        weights[algo] = result.weight
        if algo == "opt":
            opt_exists = result.status != STATUS_INFEASIBLE
        if algo == "blanking":
            blanking_runs += 1
            blanking_full += len(result.schedule) == dims.z_tot
        rows.append(
            ResultRow(
                seed,
                dims.num_users,
                dims.num_bs,
                dims.num_pz,
                cfg.shadow_db,
                p if algo == "pshd" or cfg.sweep == "fraction_p" else None,
                algo,
                result.weight,
                result.stats.nodes_explored,
                result.stats.elapsed_s * 1e3,
            )
        )

    # Dominance only makes sense where a full schedule exists at all
    # (U >= B); on infeasible cells every scheduler falls short of z_tot.
    if check and opt_exists:
        for algo in ("heu", "pshd"):
            if algo in weights and weights[algo] > weights["opt"] + 1e-9:
                raise CheckFailure(
                    f"dominance violated on value={value} seed={seed}: "
                    f"{algo}={weights[algo]!r} > opt={weights['opt']!r}"
                )
    return rows, blanking_runs, blanking_full, warnings


def run_sweep(
    cfg: ExperimentConfig,
    out_path: str | Path | None = None,
    jobs: int = 1,
    check: bool = False,
    timing: bool = True,
) -> SweepSummary:
    """Execute every (value, seed) cell and write the CSV.

    jobs > 1 distributes cells over a process pool; output order (and with
    timing disabled, output bytes) is identical for any worker count.
    check additionally asserts utility(opt) >= utility(heu|pshd) per cell
    and raises CheckFailure on the first violation.
    """
    out = out_path if out_path is not None else cfg.out
    if out is None:
        raise ConfigError("no output path: set 'out' in the config or pass one")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if check and "opt" not in cfg.algorithms:
        raise ConfigError("--check needs 'opt' among the algorithms")

    tasks = [
        (vi, si) for vi in range(len(cfg.values)) for si in range(cfg.num_seeds)
    ]
    if jobs == 1:
        outputs = [_run_cell(cfg, vi, si, check) for vi, si in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(
                pool.map(
                    _run_cell,
                    [cfg] * len(tasks),
                    [vi for vi, _ in tasks],
                    [si for _, si in tasks],
                    [check] * len(tasks),
                    chunksize=8,
                )
            )

    lines = [CSV_HEADER]
    blanking_runs = blanking_full = 0
    warnings: list[str] = []
    for rows, runs, full, warns in outputs:
        lines.extend(row.to_csv(timing) for row in rows)
        blanking_runs += runs
        blanking_full += full
        warnings.extend(warns)
    Path(out).write_text("\n".join(lines) + "\n")

    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return SweepSummary(str(out), len(lines) - 1, blanking_runs, blanking_full, tuple(warnings))


# --------------------------------------------------------------------------
# oracle verification


@dataclass(frozen=True)
class VerificationReport:
    trials: int
    mismatches: tuple[str, ...]
    max_deviation: float

    @property
    def passed(self) -> bool:
        return not self.mismatches


def run_verification(
    trials: int = 200,
    max_users: int = 4,
    max_bs: int = 3,
    max_pz: int = 3,
    seed: int = 0,
    solver=solve_exact,
) -> VerificationReport:
    """Race the graph solver against brute-force enumeration on random
    small instances with positive i.i.d. weights.

    Dimensions are drawn from U in 2..max_users, B in 2..max_bs, Z in
    1..max_pz (U < B combinations stay in: both sides must then agree the
    instance is infeasible).  The solver argument exists so tests can feed
    a deliberately broken solver and watch the verification catch it.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_users < 2 or max_bs < 2 or max_pz < 1:
        raise ValueError("bounds too small: need max_users >= 2, max_bs >= 2, max_pz >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    mismatches: list[str] = []
    max_dev = 0.0
    for t in range(trials):
        dims = Dimensions(
            int(rng.integers(2, max_users + 1)),
            int(rng.integers(2, max_bs + 1)),
            int(rng.integers(1, max_pz + 1)),
        )
        a = rng.uniform(0.1, 10.0, (dims.num_users, dims.num_bs, dims.num_pz))
        benefits = BenefitTensor(dims, a)
        got = solver(build_graph(dims, benefits))
        want = brute_force_schedule(dims, benefits)
        tag = f"trial {t} dims={dims.num_users},{dims.num_bs},{dims.num_pz}"
        if got.status != want.status:
            mismatches.append(f"{tag}: status {got.status} vs oracle {want.status}")
            continue
        if want.status == STATUS_INFEASIBLE:
            continue
        dev = abs(got.weight - want.weight)
        max_dev = max(max_dev, dev)
        if dev > 1e-9:
            mismatches.append(f"{tag}: weight {got.weight!r} vs oracle {want.weight!r}")
        if validate_schedule(got.schedule, dims, require_full=True):
            mismatches.append(f"{tag}: solver schedule violates feasibility")
    return VerificationReport(trials, tuple(mismatches), max_dev)
