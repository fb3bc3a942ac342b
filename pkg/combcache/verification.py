"""
Self-checks bundled by `combcache verify`.

Each check returns a CheckResult instead of raising, so one run reports every
failure it finds.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Set, Tuple

import numpy as np
from tqdm import tqdm

from combcache.analysis.corollary import CorollaryViolation, corollary_check
from combcache.analysis.memory import k_counts, memory_monotonicity
from combcache.gfmds import (
    CodedSymbolBlock,
    MdsCode,
    mds_decode,
    mds_encode,
)
from combcache.shared.config import ENUMERATION_CAP
from combcache.shared.scheme_kind import CheckStatus, SchemeKind
from combcache.shared.utils import xor_bytes
from combcache.topology import (
    ConsistencyError,
    NetworkParams,
    binom,
    brute_force_z,
    build_network,
    count_z,
    enumerate_z,
    per_user_incidence,
)

# Brute force walks all C(K, t) subsets; keep it to the small cases.
BRUTE_FORCE_LIMIT = 200_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS


def _result(name: str, problems: List[str]) -> CheckResult:
    if problems:
        return CheckResult(name, CheckStatus.FAIL, "; ".join(problems[:5]))
    return CheckResult(name, CheckStatus.PASS)


def check_counts(H: int, r: int) -> CheckResult:
    """Closed-form |Z_t| against enumeration, and every user lying in the same number of sets."""
    topo = build_network(NetworkParams(H=H, r=r))
    problems = []
    for t in range(1, topo.K1 + 2):
        if topo.H * binom(topo.K1, t) > ENUMERATION_CAP:
            logging.warning(f"Skipping enumeration of Z_{t} for H={H}, r={r}: above the cap")
            continue
        found = enumerate_z(topo, t)
        if len(found) != count_z(H, r, t):
            problems.append(f"|Z_{t}|: enumerated {len(found)}, formula {count_z(H, r, t)}")
        if binom(topo.K, t) <= BRUTE_FORCE_LIMIT and found != brute_force_z(topo, t):
            problems.append(f"Z_{t} enumeration differs from the definition")
        try:
            incidence = per_user_incidence(H, r, t)
        except ConsistencyError as e:
            problems.append(str(e))
            continue
        per_user = Counter(k for W in found for k in W)
        uneven = [k for k in range(1, topo.K + 1) if per_user[k] != incidence]
        if uneven:
            problems.append(
                f"Z_{t}: users {uneven[:5]} are in {[per_user[k] for k in uneven[:5]]} sets, "
                f"expected {incidence}"
            )
    return _result(f"counts H={H} r={r}", problems)


def check_corollary(H: int, r: int) -> CheckResult:
    try:
        corollary_check(H, r)
    except (CorollaryViolation, ConsistencyError) as e:
        return CheckResult(f"corollary H={H} r={r}", CheckStatus.FAIL, str(e))
    flagged = memory_monotonicity(H, r)
    detail = f"memory not increasing at g={flagged}" if flagged else ""
    return CheckResult(f"corollary H={H} r={r}", CheckStatus.PASS, detail)


def _random_message(code: MdsCode, rng: np.random.Generator, symbols: int = 2) -> List[bytes]:
    size = symbols * code.symbol_bytes
    return [rng.integers(0, 256, size=size, dtype=np.uint8).tobytes() for _ in range(code.k)]


def _decodes(code: MdsCode, blocks: List[CodedSymbolBlock], subset, message) -> bool:
    return mds_decode(code, [blocks[i] for i in subset]) == message


def check_mds_exhaustive(n_max: int = 12, seed: int = 0) -> CheckResult:
    """Every k-subset of every (n, k) code with n <= n_max decodes."""
    rng = np.random.default_rng(seed)
    problems = []
    for n in tqdm(range(1, n_max + 1), desc="MDS exhaustive", leave=False):
        for k in range(1, n + 1):
            code = MdsCode.for_parameters(n, k)
            message = _random_message(code, rng)
            blocks = mds_encode(code, message)
            for subset in itertools.combinations(range(n), k):
                if not _decodes(code, blocks, subset, message):
                    problems.append(f"({n}, {k}) fails on symbols {[i + 1 for i in subset]}")
    return _result(f"mds exhaustive n<={n_max}", problems)


def check_mds_random(n: int, k: int, trials: int = 100, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    code = MdsCode.for_parameters(n, k)
    message = _random_message(code, rng)
    blocks = mds_encode(code, message)
    problems = []
    for _ in range(trials):
        subset = sorted(rng.choice(n, size=k, replace=False).tolist())
        if not _decodes(code, blocks, subset, message):
            problems.append(f"fails on symbols {[i + 1 for i in subset]}")
    return _result(f"mds random ({n}, {k})", problems)


def check_xor_linearity(n: int, k: int, seed: int = 0) -> CheckResult:
    """encode(a) XOR encode(b) == encode(a XOR b), symbol by symbol."""
    rng = np.random.default_rng(seed)
    code = MdsCode.for_parameters(n, k)
    a = _random_message(code, rng)
    b = _random_message(code, rng)
    mixed = [xor_bytes([x, y]) for x, y in zip(a, b)]
    ea, eb, emixed = (mds_encode(code, m) for m in (a, b, mixed))
    problems = [
        f"symbol {s.index}"
        for s, u, v in zip(emixed, ea, eb)
        if s.payload != xor_bytes([u.payload, v.payload])
    ]
    return _result(f"xor linearity ({n}, {k})", problems)


def scheme_codes(H: int, r: int) -> Set[Tuple[int, int]]:
    """(n, k) of every coded scheme configuration on the network."""
    K1 = NetworkParams(H=H, r=r).K1
    res = set()
    for kind in SchemeKind.CODED:
        for g in range(1, K1 + 1):
            counts = k_counts(kind, H, r, g)
            res.add((counts.n, counts.k))
    return res
