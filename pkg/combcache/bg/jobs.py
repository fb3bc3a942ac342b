import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from combcache.analysis.memory import k_counts, scheme_point
from combcache.schemes import DemandVector, SchemeConfig
from combcache.schemes.workload import random_demand, random_library, worst_case_demand
from combcache.simulation import (
    check_invariants,
    expected_point,
    run_simulation,
    sized_network,
)
from combcache.shared.config import Config
from combcache.shared.utils import format_decimal, format_fraction

# Note: These are plain functions of plain arguments so they can be shipped to
# joblib worker processes; results come back in submission order.


def run_parallel(fn: Callable, arg_list: Iterable[Sequence], workers: Optional[int] = None) -> List:
    workers = workers or Config.get_default_workers()
    arg_list = list(arg_list)
    if workers == 1 or len(arg_list) <= 1:
        return [fn(*args) for args in arg_list]
    return Parallel(n_jobs=workers)(delayed(fn)(*args) for args in arg_list)


def analytic_row(kind: str, N: int, H: int, r: int, g: int) -> Dict:
    """One sweep CSV row."""
    point = scheme_point(kind, N, H, r, g)
    counts = k_counts(kind, H, r, g)
    return {
        "H": H,
        "r": r,
        "N": N,
        "scheme": kind,
        "g": g,
        "M_exact": format_fraction(point.M),
        "M_decimal": format_decimal(point.M),
        "R1_exact": format_fraction(point.R1),
        "R1_decimal": format_decimal(point.R1),
        "R2_exact": format_fraction(point.R2),
        "R2_decimal": format_decimal(point.R2),
        "k1": counts.k1,
        "k2": counts.k2,
        "k3": counts.k3,
        "n": counts.n,
    }


def simulate_case(
    H: int,
    r: int,
    N: int,
    kind: str,
    g: Optional[int],
    m_fraction,
    requested_B: int,
    demands: Sequence[Tuple[int, ...]],
    seed: int,
) -> Dict:
    """Runs one configuration on every demand and checks the invariants.

    Returns a summary dict; failures are collected as messages, not raised.
    """
    config = SchemeConfig(kind=kind, g=g, m_fraction=m_fraction)
    topo = sized_network(H, r, N, config, requested_B)
    library = random_library(N, topo.params.B, seed)
    point = expected_point(topo, config)

    failures = []
    for d in demands:
        demand = DemandVector(d=tuple(d))
        try:
            report = run_simulation(topo, config, library, demand)
            check_invariants(report, point)
        except (AssertionError, ArithmeticError, RuntimeError, ValueError) as e:
            logging.error(f"{kind} H={H} r={r} g={g} d={d}: {e}")
            failures.append(f"d={list(d)}: {type(e).__name__}: {e}")

    return {
        "H": H,
        "r": r,
        "scheme": kind,
        "g": g,
        "B": topo.params.B,
        "demands": len(demands),
        "failures": failures,
    }


def demand_set(K: int, N: int, random_count: int, seed: int) -> List[Tuple[int, ...]]:
    """The all-distinct demand (when N >= K) followed by `random_count` random ones."""
    rng = np.random.default_rng(seed)
    res = []
    if N >= K:
        res.append(worst_case_demand(K, N).d)
    for _ in range(random_count):
        res.append(random_demand(K, N, rng).d)
    return res
