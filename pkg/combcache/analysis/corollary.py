"""
Matched-gain comparison of the asymmetric and baseline memories.

At equal gain g the asymmetric placement never needs more memory than the
baseline, and the two coincide exactly when g >= K_2 + 2. The memory
inequality is equivalent to the ratio bound

    |Z_g| / |Z_{g-1}| >= (K_1 - g + 1) / g,

which is tight exactly when C(K_2, g - 1) = 0, i.e. when only the single-relay
term survives in the inclusion-exclusion sums.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from combcache.analysis.memory import memory_asymmetric, memory_baseline, z_size
from combcache.topology import binom, k_i


class CorollaryViolation(AssertionError):
    def __init__(self, g: int, message: str):
        super().__init__(f"g={g}: {message}")
        self.g = g


@dataclass(frozen=True)
class CorollaryRow:
    g: int
    m_asymmetric: Fraction  # M/N
    m_baseline: Fraction  # M/N
    equal: bool
    expected_equal: bool
    chain_ratio: Optional[Fraction]
    chain_bound: Optional[Fraction]


@dataclass(frozen=True)
class CorollaryReport:
    H: int
    r: int
    K1: int
    K2: int
    rows: List[CorollaryRow]

    @property
    def equality_threshold(self) -> int:
        return self.K2 + 2


def corollary_check(H: int, r: int) -> CorollaryReport:
    K1 = k_i(H, r, 1)
    # K_2 with the zero convention, also for r = 1.
    K2 = binom(H - 2, r - 2)

    if H > r:
        K_chain = [k_i(H, r, i) for i in range(1, r + 1)]
        if any(a <= b for a, b in zip(K_chain, K_chain[1:])):
            raise CorollaryViolation(0, f"K_1..K_r not strictly decreasing: {K_chain}")

    rows = []
    for g in range(1, K1 + 1):
        m_asym = memory_asymmetric(1, H, r, g)
        m_base = memory_baseline(1, H, r, g)
        if m_asym > m_base:
            raise CorollaryViolation(g, f"asymmetric memory {m_asym} exceeds baseline {m_base}")

        if g == 1:
            # Both memories vanish; the threshold statement starts at g = 2.
            expected_equal = True
            ratio = bound = None
        else:
            expected_equal = g >= K2 + 2
            ratio = Fraction(z_size(H, r, g), z_size(H, r, g - 1))
            bound = Fraction(K1 - g + 1, g)
            if ratio < bound:
                raise CorollaryViolation(g, f"|Z_g|/|Z_g-1| = {ratio} below {bound}")
            if (ratio == bound) != expected_equal:
                raise CorollaryViolation(
                    g, f"ratio bound tightness {ratio == bound}, expected {expected_equal}"
                )

        equal = m_asym == m_base
        if equal != expected_equal:
            raise CorollaryViolation(
                g, f"memories equal={equal} but g >= K_2 + 2 = {K2 + 2} is {expected_equal}"
            )
        rows.append(
            CorollaryRow(
                g=g,
                m_asymmetric=m_asym,
                m_baseline=m_base,
                equal=equal,
                expected_equal=expected_equal,
                chain_ratio=ratio,
                chain_bound=bound,
            )
        )

    logging.info(f"Matched-gain memory check passed for H={H}, r={r} over g=1..{K1}")
    return CorollaryReport(H=H, r=r, K1=K1, K2=K2, rows=rows)
