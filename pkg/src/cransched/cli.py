"""Command-line front end.

Subcommands: generate (draw an instance file), solve (run one scheduler on
an instance), sweep (multi-seed experiment to CSV), verify (race the exact
solver against the brute-force oracle), dump-graph (edge-list debug dump).

Exit codes: 0 success, 1 usage or input error, 2 infeasible instance,
3 verification/check failure.  All stdout is deterministic for a fixed
seed; timing only ever goes into CSV (and can be suppressed there with
--no-timing).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .exact import STATUS_INFEASIBLE
from .experiment import (
    CheckFailure,
    load_sweep_config,
    run_algorithm,
    run_sweep,
    run_verification,
)
from .graph import build_graph, dump_edge_list
from .instance_io import (
    load_benefits,
    load_bs_positions,
    load_instance,
    save_instance,
    save_layout,
)
from .model import Dimensions, sum_rate_benefits
from .simulator import SimParams, generate_instance, generate_layout

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFICATION = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage by default; our contract says 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sim_params(args: argparse.Namespace) -> SimParams:
    return SimParams(
        seed=args.seed,
        shadow_sigma_db=args.shadow_db,
        fading=args.fading,
    )


def cmd_generate(args: argparse.Namespace) -> int:
    dims = Dimensions(args.users, args.bs, args.pz)
    params = _sim_params(args)
    bs_positions = load_bs_positions(args.layout) if args.layout else None
    inst = generate_instance(dims, params, bs_positions, allow_any_b=args.allow_any_bs)
    save_instance(args.out, inst)
    if args.dump_layout:
        save_layout(
            args.dump_layout,
            generate_layout(dims, params, bs_positions, allow_any_b=args.allow_any_bs),
        )
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    if args.benefits:
        benefits = load_benefits(args.benefits, inst.dims)
    else:
        benefits = sum_rate_benefits(inst)
    graph = build_graph(inst.dims, benefits)
    result = run_algorithm(args.algo, graph, args.p, args.exact_on_pruned)
    print(f"status: {result.status}")
    print(f"utility: {result.weight!r}")
    print(f"nodes: {result.stats.nodes_explored}")
    print("schedule:")
    for e in result.schedule.sorted_entries():
        print(f"  (u={e.user}, b={e.bs}, z={e.pz})")
    return EXIT_INFEASIBLE if result.status == STATUS_INFEASIBLE else EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = load_sweep_config(args.config)
    summary = run_sweep(
        cfg,
        out_path=args.out,
        jobs=args.jobs,
        check=args.check,
        timing=not args.no_timing,
    )
    print(f"wrote {summary.num_rows} rows to {summary.out_path}")
    if summary.blanking_runs:
        print(
            f"blanking tightness: {summary.blanking_full}/{summary.blanking_runs} "
            "runs used every power-zone"
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(
        trials=args.trials,
        max_users=args.max_users,
        max_bs=args.max_bs,
        max_pz=args.max_pz,
        seed=args.seed,
    )
    print(f"trials: {report.trials}")
    print(f"max deviation: {report.max_deviation!r}")
    for m in report.mismatches:
        print(f"MISMATCH {m}")
    print("verdict: " + ("pass" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_dump_graph(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    if args.benefits:
        benefits = load_benefits(args.benefits, inst.dims)
    else:
        benefits = sum_rate_benefits(inst)
    text = dump_edge_list(build_graph(inst.dims, benefits))
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cransched",
        description="Coordinated downlink scheduling: instance generation, "
        "exact and greedy schedulers, sweeps, and oracle verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="draw a random instance and write it to a file")
    gen.add_argument("--users", type=int, required=True, help="number of users U")
    gen.add_argument("--bs", type=int, required=True, help="number of base-stations B")
    gen.add_argument("--pz", type=int, required=True, help="power-zones per BS, Z")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--shadow-db", type=float, default=8.0, help="shadowing std dev in dB")
    gen.add_argument("--fading", choices=("rayleigh", "none"), default="rayleigh")
    gen.add_argument("--allow-any-bs", action="store_true",
                     help="accept B outside the native layout set")
    gen.add_argument("--layout", help="CSV with explicit base-station positions")
    gen.add_argument("--dump-layout", metavar="PATH", help="also write positions as CSV")
    gen.add_argument("--out", required=True, help="instance file to write")
    gen.set_defaults(func=cmd_generate)

    solve = sub.add_parser("solve", help="run one scheduler on an instance file")
    solve.add_argument("instance", help="instance file from 'generate'")
    solve.add_argument("--algo", required=True, choices=("opt", "heu", "pshd", "blanking"))
    solve.add_argument("--p", type=float, help="kept fraction for pshd")
    solve.add_argument("--exact-on-pruned", action="store_true",
                       help="pshd variant: exact search instead of greedy on the pruned graph")
    solve.add_argument("--benefits", help="benefit tensor file overriding sum-rate weights")
    solve.set_defaults(func=cmd_solve)

    sweep = sub.add_parser("sweep", help="run a multi-seed experiment, write CSV")
    sweep.add_argument("config", help="sweep config file (key = value lines)")
    sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    sweep.add_argument("--check", action="store_true",
                       help="assert opt >= heu/pshd on every cell")
    sweep.add_argument("--out", help="output CSV (overrides the config's 'out')")
    sweep.add_argument("--no-timing", action="store_true",
                       help="leave runtime_ms empty for byte-reproducible CSVs")
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="compare solver against brute-force oracle")
    verify.add_argument("--trials", type=int, default=200)
    verify.add_argument("--max-users", type=int, default=4)
    verify.add_argument("--max-bs", type=int, default=3)
    verify.add_argument("--max-pz", type=int, default=3)
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=cmd_verify)

    dump = sub.add_parser("dump-graph", help="write the scheduling graph as edge-list text")
    dump.add_argument("instance")
    dump.add_argument("--benefits", help="benefit tensor file overriding sum-rate weights")
    dump.add_argument("--out", help="write here instead of stdout")
    dump.set_defaults(func=cmd_dump_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits itself on bad usage / --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except CheckFailure as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
