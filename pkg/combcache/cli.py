"""
Command line front end.

    python -m combcache simulate --H 4 --r 2 --scheme asymmetric --g 2
    python -m combcache sweep --H 6 --r 3 --N 20 --output tradeoff.csv
    python -m combcache verify --H-range 3:6
    python -m combcache compare --H 6 --r 3

Flags override values read from --config (a JSON object with RunSpec keys).
Exit status: 0 success, 1 a decode failure or violated invariant, 2 invalid input.
"""

import argparse
import logging
import math
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from envparse import env
from tqdm import tqdm

from combcache.analysis.corollary import CorollaryViolation, corollary_check
from combcache.analysis.envelope import load_ratio, subpacketization, tradeoff_curve
from combcache.bg.jobs import analytic_row, demand_set, run_parallel, simulate_case
from combcache.data.request.run_spec import (
    COMMAND_COMPARE,
    COMMAND_SIMULATE,
    COMMAND_SWEEP,
    COMMAND_VERIFY,
    WORST_CASE,
    RunSpec,
    parse_range,
)
from combcache.gfmds import MAX_N
from combcache.schemes import DecodeFailure, DemandVector, SchemeConfig
from combcache.schemes.transcript import ForwardingError
from combcache.schemes.workload import (
    parse_demand,
    random_demand,
    random_library,
    worst_case_demand,
)
from combcache.shared import fs, log
from combcache.shared.scheme_kind import CheckStatus, SchemeKind
from combcache.shared.utils import format_decimal, format_fraction, load_json
from combcache.simulation import (
    InvariantViolation,
    check_invariants,
    expected_point,
    run_simulation,
    sized_network,
)
from combcache.topology import ConsistencyError, k_i
from combcache.verification import (
    CheckResult,
    check_corollary,
    check_counts,
    check_mds_exhaustive,
    check_mds_random,
    check_xor_linearity,
    scheme_codes,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

SWEEP_COLUMNS = [
    "H", "r", "N", "scheme", "g",
    "M_exact", "M_decimal", "R1_exact", "R1_decimal", "R2_exact", "R2_decimal",
    "k1", "k2", "k3", "n",
]

# Desk-scale limits of the verification suite.
VERIFY_MAX_K_COUNTS = 30
VERIFY_MAX_K_SIMULATION = 20
VERIFY_RANDOM_DEMANDS = 5
ROUTING_FRACTIONS = (Fraction(0), Fraction(1, 2), Fraction(1))

# Flags whose value is not a RunSpec field.
_NON_SPEC_FLAGS = {"command", "config", "log_level"}


def _fmt(x) -> str:
    return f"{format_fraction(x)} ({format_decimal(x)})"


def _print_report(report, point):
    config = report.config
    print(
        f"scheme={config.kind} H={report.topo.H} r={report.topo.r} "
        f"N={report.topo.params.N} B={report.B} g={config.g} d={list(report.demand.d)}"
    )
    print(f"  M    = {_fmt(point.M)}  M/N = {format_fraction(point.M / report.topo.params.N)}")
    print(f"  R1   = {_fmt(report.loads.R1)}")
    print(f"  R2   = {_fmt(report.loads.R2)}")
    print(f"  messages = {report.message_count}")
    for k, status in report.user_status().items():
        print(f"  user {k}: {status}")


def cmd_simulate(spec: RunSpec) -> int:
    N = spec.files
    config = SchemeConfig(kind=spec.scheme, g=spec.g, m_fraction=spec.m)
    topo = sized_network(spec.H, spec.r, N, config, spec.B)
    point = expected_point(topo, config)
    library = random_library(N, topo.params.B, spec.seed)

    if spec.demand == WORST_CASE:
        demands = [worst_case_demand(topo.K, N)]
    else:
        demands = [DemandVector(d=tuple(spec.demand))]
    rng = np.random.default_rng(spec.seed)
    demands += [random_demand(topo.K, N, rng) for _ in range(spec.random_demands or 0)]

    status = EXIT_OK
    for i, demand in enumerate(demands):
        dump_path = None
        if spec.dump_transcript:
            name = spec.dump_transcript if i == 0 else spec.dump_transcript.replace(
                ".jsonl", f"_{i}.jsonl"
            )
            dump_path = fs.resolve_output(name, fs.transcripts_dir())
        report = run_simulation(topo, config, library, demand, dump_path=dump_path)
        _print_report(report, point)
        try:
            check_invariants(report, point)
        except (DecodeFailure, InvariantViolation) as e:
            print(f"  {CheckStatus.FAIL}: {e}")
            status = EXIT_FAILURE
    return status


def sweep_rows(spec: RunSpec) -> List[Dict]:
    N, K1 = spec.files, k_i(spec.H, spec.r, 1)
    g_max = K1 if spec.g_max is None else min(spec.g_max, K1)
    args = [
        (kind, N, spec.H, spec.r, g)
        for kind in spec.scheme_list
        for g in range(max(spec.g_min, 1), g_max + 1)
    ]
    rows = run_parallel(analytic_row, args, spec.workers)
    if not rows:
        return rows

    for kind in spec.scheme_list:
        curve = tradeoff_curve(kind, N, spec.H, spec.r)
        for M, R in curve.sample(spec.grid):
            rows.append(
                {
                    "H": spec.H,
                    "r": spec.r,
                    "N": N,
                    "scheme": f"envelope:{kind}",
                    "M_exact": format_fraction(M),
                    "M_decimal": format_decimal(M),
                    "R1_exact": format_fraction(R),
                    "R1_decimal": format_decimal(R),
                }
            )
    return rows


def cmd_sweep(spec: RunSpec) -> int:
    rows = sweep_rows(spec)
    df = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    # Integer columns stay integers next to the blank envelope cells.
    for col in ("g", "k1", "k2", "k3", "n"):
        df[col] = df[col].astype("Int64")

    name = spec.output or f"sweep_H{spec.H}_r{spec.r}_N{spec.files}.csv"
    path = fs.resolve_output(name, fs.tables_dir())
    df.to_csv(path, index=False)
    print(f"Wrote {len(df)} rows to {path}")
    return EXIT_OK


def cmd_compare(spec: RunSpec) -> int:
    N = spec.files
    report = corollary_check(spec.H, spec.r)
    n_asym = dict(subpacketization(SchemeKind.ASYMMETRIC, spec.H, spec.r))
    n_base = dict(subpacketization(SchemeKind.BASELINE, spec.H, spec.r))
    table = pd.DataFrame(
        [
            {
                "g": row.g,
                "M_asym/N": format_fraction(row.m_asymmetric),
                "M_base/N": format_fraction(row.m_baseline),
                "equal": row.equal,
                "expected": row.expected_equal,
                "chain_ratio": "" if row.chain_ratio is None else format_fraction(row.chain_ratio),
                "chain_bound": "" if row.chain_bound is None else format_fraction(row.chain_bound),
                "n_asym": n_asym[row.g],
                "n_base": n_base[row.g],
            }
            for row in report.rows
        ]
    )
    print(f"H={spec.H} r={spec.r} K1={report.K1} K2={report.K2}: "
          f"equal memories from g={report.equality_threshold}")
    print(table.to_string(index=False))

    asym = tradeoff_curve(SchemeKind.ASYMMETRIC, N, spec.H, spec.r)
    base = tradeoff_curve(SchemeKind.BASELINE, N, spec.H, spec.r)
    ratios = [(M, q) for M, q in load_ratio(asym, base, spec.grid) if q is not None]
    dominated = all(asym.evaluate(M) <= base.evaluate(M) for M, _ in asym.sample(spec.grid))
    strict = [M for M, q in ratios if q < 1]
    print(f"Envelope load ratio asymmetric/baseline on {spec.grid} points: "
          f"min {format_decimal(min(q for _, q in ratios))}, "
          f"max {format_decimal(max(q for _, q in ratios))}")
    if strict:
        print(f"Asymmetric strictly lower for M in [{_fmt(min(strict))}, {_fmt(max(strict))}]")
    if not dominated:
        print(f"{CheckStatus.FAIL}: asymmetric envelope exceeds baseline somewhere")
        return EXIT_FAILURE
    return EXIT_OK


def _verify_networks(spec: RunSpec):
    if spec.H_range:
        h_lo, h_hi = parse_range(spec.H_range)
    else:
        h_lo = h_hi = spec.H
    for H in range(max(h_lo, 1), h_hi + 1):
        if spec.r_range:
            r_lo, r_hi = parse_range(spec.r_range)
        elif spec.r is not None:
            r_lo = r_hi = spec.r
        else:
            r_lo, r_hi = 1, H
        for r in range(max(r_lo, 1), min(r_hi, H) + 1):
            yield H, r


def cmd_verify(spec: RunSpec) -> int:
    networks = list(_verify_networks(spec))
    random_count = VERIFY_RANDOM_DEMANDS if spec.random_demands is None else spec.random_demands
    results = [check_mds_exhaustive(seed=spec.seed)]
    cases = []

    for H, r in tqdm(networks, desc="networks"):
        K = math.comb(H, r)
        if K <= VERIFY_MAX_K_COUNTS:
            results.append(check_counts(H, r))
        else:
            logging.info(f"Skipping enumeration checks for H={H}, r={r}: K={K}")
        results.append(check_corollary(H, r))
        if K > VERIFY_MAX_K_SIMULATION:
            continue

        for n, k in sorted(scheme_codes(H, r)):
            if 12 < n <= MAX_N:
                results.append(check_mds_random(n, k, seed=spec.seed))
                results.append(check_xor_linearity(n, k, seed=spec.seed))

        demands = demand_set(K, K, random_count, spec.seed)
        for kind in SchemeKind.CODED:
            for g in range(1, k_i(H, r, 1) + 1):
                cases.append((H, r, K, kind, g, None, 1, demands, spec.seed))
        for m in ROUTING_FRACTIONS:
            cases.append((H, r, K, SchemeKind.ROUTING, None, m, 1, demands, spec.seed))

    for summary in run_parallel(simulate_case, cases, spec.workers):
        name = (
            f"simulate {summary['scheme']} H={summary['H']} r={summary['r']} "
            f"g={summary['g']} B={summary['B']} demands={summary['demands']}"
        )
        status = CheckStatus.FAIL if summary["failures"] else CheckStatus.PASS
        results.append(
            CheckResult(name, status, "; ".join(summary["failures"][:3]))
        )

    for res in results:
        print(f"{res.status} {res.name}" + (f"  [{res.detail}]" if res.detail else ""))
    failed = [res for res in results if not res.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAILURE if failed else EXIT_OK


COMMANDS = {
    COMMAND_SIMULATE: cmd_simulate,
    COMMAND_SWEEP: cmd_sweep,
    COMMAND_VERIFY: cmd_verify,
    COMMAND_COMPARE: cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    # Defaults are suppressed on every parser so only flags actually given override the config file.
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--H", type=int, help="Number of relays")
    common.add_argument("--r", type=int, help="Relays per user")
    common.add_argument("--N", type=int, help="Number of files (default K)")
    common.add_argument("--config", help="JSON file with RunSpec keys")
    common.add_argument("--log-level", dest="log_level", help="Logging level (default INFO)")
    common.add_argument("--workers", type=int, help="Worker processes (default: all CPUs)")
    common.add_argument("--seed", type=int, help="Seed for file contents and demands")

    parser = argparse.ArgumentParser(
        prog="combcache", description="Coded caching for combination networks"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub_kwargs = dict(parents=[common], argument_default=argparse.SUPPRESS)

    simulate = sub.add_parser(COMMAND_SIMULATE, **sub_kwargs, help="Run one scheme")
    simulate.add_argument("--scheme", choices=SchemeKind.ALL)
    simulate.add_argument("--g", type=int, help="Coded caching gain")
    simulate.add_argument("--m-fraction", dest="m_fraction", help="M/N for routing, e.g. 1/3")
    simulate.add_argument("--B", type=int, help="Requested file size in bytes")
    simulate.add_argument("--demand", help="'worst-case' or comma separated file IDs")
    simulate.add_argument("--random-demands", dest="random_demands", type=int)
    simulate.add_argument("--dump-transcript", dest="dump_transcript", help="JSONL path")

    sweep = sub.add_parser(COMMAND_SWEEP, **sub_kwargs, help="Tradeoff CSV")
    sweep.add_argument("--g-min", dest="g_min", type=int)
    sweep.add_argument("--g-max", dest="g_max", type=int)
    sweep.add_argument("--schemes", help="Comma separated coded schemes")
    sweep.add_argument("--grid", type=int, help="Envelope sample points")
    sweep.add_argument("--output", help="CSV path")

    verify = sub.add_parser(COMMAND_VERIFY, **sub_kwargs, help="Self-check suite")
    verify.add_argument("--H-range", dest="H_range", help="a:b, inclusive")
    verify.add_argument("--r-range", dest="r_range", help="a:b, inclusive")
    verify.add_argument("--random-demands", dest="random_demands", type=int)

    compare = sub.add_parser(COMMAND_COMPARE, **sub_kwargs, help="Matched-gain comparison")
    compare.add_argument("--grid", type=int, help="Envelope sample points")
    return parser


def spec_from_args(args: argparse.Namespace):
    """RunSpec (or InvalidRequest) from --config overlaid with the given flags."""
    data = {}
    config_path = getattr(args, "config", None)
    if config_path:
        loaded = load_json(config_path)
        if not isinstance(loaded, dict):
            raise ValueError(f"Config file {config_path} is missing or not a JSON object")
        data.update(loaded)

    for key, value in vars(args).items():
        if key in _NON_SPEC_FLAGS:
            continue
        if key == "demand":
            value = value if value == WORST_CASE else list(parse_demand(value).d)
        elif key == "schemes":
            value = [s.strip() for s in value.split(",") if s.strip()]
        data[key] = value
    return RunSpec.from_dict(data, command=args.command)


def main(argv: Optional[List[str]] = None) -> int:
    if os.path.isfile(".env"):
        env.read_envfile(".env")
    args = build_parser().parse_args(argv)

    try:
        log.setup(getattr(args, "log_level", "INFO"))
        spec = spec_from_args(args)
        if not spec:
            print(f"Invalid run spec: {spec.describe()}", file=sys.stderr)
            return EXIT_INVALID
        return COMMANDS[args.command](spec)
    except (
        DecodeFailure,
        InvariantViolation,
        ForwardingError,
        CorollaryViolation,
        ConsistencyError,
    ) as e:
        print(f"{CheckStatus.FAIL}: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as e:
        print(f"Invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
