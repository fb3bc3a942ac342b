"""
Closed-form memory / load points of the caching schemes.

Every quantity is an exact Fraction. M is measured in files, loads in files
per link (bytes on the link divided by the file size).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from combcache.shared.scheme_kind import SchemeKind
from combcache.topology import (
    ConsistencyError,
    binom,
    count_z,
    k_i,
    per_user_incidence,
)


class InvalidGainError(ValueError):
    pass


def validate_gain(H: int, r: int, g: int):
    """Cut-set bound: a relay serves K_1 users, so at most K_1 can share a message."""
    K1 = k_i(H, r, 1)
    if not isinstance(g, int) or isinstance(g, bool) or not 1 <= g <= K1:
        raise InvalidGainError(f"g={g!r} outside [1..K1={K1}] for H={H}, r={r}")


def z_size(H: int, r: int, t: int) -> int:
    """|Z_t| with |Z_0| = 1 (the empty set is served by every relay)."""
    if t == 0:
        return 1
    return count_z(H, r, t)


@dataclass(frozen=True)
class SubpacketCounts:
    n: int  # coded subfiles per file
    k1: int  # subfiles per file each user caches
    k2: int  # subfiles per file each user decodes from the delivery
    k3: int  # multicast messages sent

    @property
    def k(self) -> int:
        """MDS code dimension."""
        return self.k1 + self.k2


def k_counts(kind: str, H: int, r: int, g: int) -> SubpacketCounts:
    validate_gain(H, r, g)
    K = math.comb(H, r)
    K1 = k_i(H, r, 1)

    if kind == SchemeKind.BASELINE:
        counts = SubpacketCounts(
            n=H * binom(K1, g - 1),
            k1=r * binom(K1 - 1, g - 2),
            k2=r * binom(K1 - 1, g - 1),
            k3=H * binom(K1, g),
        )
        assert counts.k == r * binom(K1, g - 1)
        return counts

    if kind == SchemeKind.ASYMMETRIC:
        z_prev = z_size(H, r, g - 1)
        z_g = count_z(H, r, g)
        # Each user sits in equally many sets of Z_t, so K divides t|Z_t|.
        for t, z in ((g - 1, z_prev), (g, z_g)):
            if (t * z) % K != 0:
                raise ConsistencyError(f"K={K} does not divide {t}*|Z_{t}|={t * z}")
        k1 = (g - 1) * z_prev // K
        k2 = g * z_g // K
        if g >= 2 and k1 != per_user_incidence(H, r, g - 1):
            raise ConsistencyError(f"k1={k1} disagrees with the per-user incidence of Z_{g - 1}")
        return SubpacketCounts(n=z_prev, k1=k1, k2=k2, k3=z_g)

    raise ValueError(f"No subpacketization for scheme {kind!r}")


def memory_baseline(N: int, H: int, r: int, g: int) -> Fraction:
    validate_gain(H, r, g)
    return Fraction(N * (g - 1), k_i(H, r, 1))


def memory_asymmetric(N: int, H: int, r: int, g: int) -> Fraction:
    validate_gain(H, r, g)
    K_a = [k_i(H, r, a) for a in range(r + 1)]
    num = sum(
        binom(r, a) * binom(K_a[a] - 1, g - 2) * (-1) ** (a - 1) for a in range(1, r + 1)
    )
    den = sum(
        binom(r, a) * binom(K_a[a], g - 1) * (-1) ** (a - 1) for a in range(1, r + 1)
    )
    M = N * Fraction(num, den)

    z_prev = z_size(H, r, g - 1)
    z_g = count_z(H, r, g)
    cached = (g - 1) * z_prev
    alt = N * Fraction(cached, cached + g * z_g)
    if M != alt:
        raise ConsistencyError(
            f"Memory formulas disagree at H={H}, r={r}, g={g}: {M} vs {alt}"
        )
    return M


def memory_for(kind: str, N: int, H: int, r: int, g: int) -> Fraction:
    if kind == SchemeKind.BASELINE:
        return memory_baseline(N, H, r, g)
    if kind == SchemeKind.ASYMMETRIC:
        return memory_asymmetric(N, H, r, g)
    raise ValueError(f"Scheme {kind!r} has no memory-versus-gain formula")


def load_at(N: int, H: int, r: int, g: int, M) -> Fraction:
    """Routing load K(1 - M/N)/H divided by the coded caching gain g."""
    M = Fraction(M)
    if g < 1:
        raise InvalidGainError(f"g must be >= 1, got {g}")
    if not 0 <= M <= N:
        raise ValueError(f"M={M} outside [0, {N}]")
    K = math.comb(H, r)
    return Fraction(K) * (1 - M / N) / (H * g)


@dataclass(frozen=True)
class SchemePoint:
    scheme: str
    g: Optional[int]
    M: Fraction
    R1: Fraction
    R2: Fraction

    @property
    def R(self) -> Fraction:
        """Max-link load."""
        return max(self.R1, self.R2)


def check_count_relations(kind: str, N: int, H: int, r: int, g: int, point: SchemePoint):
    """M/N = k1/k, r R2 = k2/k, H R1 = k3/k and g = K k2 / k3."""
    counts = k_counts(kind, H, r, g)
    K = math.comb(H, r)
    checks = {
        "M/N": (point.M / N, Fraction(counts.k1, counts.k)),
        "r*R2": (r * point.R2, Fraction(counts.k2, counts.k)),
        "H*R1": (H * point.R1, Fraction(counts.k3, counts.k)),
        "g": (Fraction(g), Fraction(K * counts.k2, counts.k3) if counts.k3 else Fraction(g)),
    }
    for name, (lhs, rhs) in checks.items():
        if lhs != rhs:
            raise ConsistencyError(f"{kind} g={g}: {name} is {lhs}, counts give {rhs}")


def scheme_point(kind: str, N: int, H: int, r: int, g: int) -> SchemePoint:
    M = memory_for(kind, N, H, r, g)
    point = SchemePoint(
        scheme=kind,
        g=g,
        M=M,
        R1=load_at(N, H, r, g, M),
        R2=(1 - M / N) / r,
    )
    check_count_relations(kind, N, H, r, g, point)
    return point


def routing_point(N: int, H: int, r: int, m_fraction) -> SchemePoint:
    m = Fraction(m_fraction)
    if not 0 <= m <= 1:
        raise ValueError(f"M/N={m} outside [0, 1]")
    return SchemePoint(
        scheme=SchemeKind.ROUTING,
        g=1,
        M=N * m,
        R1=load_at(N, H, r, 1, N * m),
        R2=(1 - m) / r,
    )


def memory_monotonicity(H: int, r: int) -> List[int]:
    """Gains g at which the asymmetric memory does not strictly increase."""
    flagged = []
    prev = None
    for g in range(1, k_i(H, r, 1) + 1):
        M = memory_asymmetric(1, H, r, g)
        if prev is not None and M <= prev:
            logging.warning(
                f"Asymmetric memory not increasing at H={H}, r={r}, g={g}: {M} <= {prev}"
            )
            flagged.append(g)
        prev = M
    return flagged
