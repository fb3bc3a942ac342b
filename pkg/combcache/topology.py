"""
The (H, r) combination network and its combinatorial set queries.

A server feeds H relays; each of the K = C(H, r) users is attached to a
distinct r-subset of relays. Users are numbered 1..K in colexicographic
order of their relay sets, relays are numbered 1..H.

All counts are exact Python integers.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from combcache.shared.config import ENUMERATION_CAP

# Sorted, strictly ascending tuple of user IDs.
UserSet = Tuple[int, ...]
RelaySet = FrozenSet[int]


class InvalidNetworkError(ValueError):
    pass


class EnumerationCapExceeded(ValueError):
    pass


class ConsistencyError(ArithmeticError):
    """Two exact formulas that must agree did not."""


def binom(x: int, y: int) -> int:
    """C(x, y), zero when x < 0, y < 0 or x < y."""
    if x < 0 or y < 0 or x < y:
        return 0
    return math.comb(x, y)


def colex_key(s: Sequence[int]):
    return tuple(reversed(s))


def make_user_set(members: Iterable[int]) -> UserSet:
    return tuple(sorted(set(members)))


@dataclass(frozen=True)
class NetworkParams:
    H: int
    r: int
    N: int = 1
    B: int = 1

    def __post_init__(self):
        for name in ("H", "r", "N", "B"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidNetworkError(f"{name} must be a positive integer, got {value!r}")
        if self.r > self.H:
            raise InvalidNetworkError(f"r={self.r} exceeds H={self.H}")

    @property
    def K(self) -> int:
        return math.comb(self.H, self.r)

    @property
    def K1(self) -> int:
        return k_i(self.H, self.r, 1)


@dataclass(frozen=True)
class NetworkTopology:
    params: NetworkParams
    # users[k - 1] is the relay set H_k of user k.
    users: Tuple[Tuple[int, ...], ...]
    # relay_users[h - 1] is U_h.
    relay_users: Tuple[UserSet, ...]

    @property
    def H(self) -> int:
        return self.params.H

    @property
    def r(self) -> int:
        return self.params.r

    @property
    def K(self) -> int:
        return len(self.users)

    @property
    def K1(self) -> int:
        return self.params.K1

    def relays_of(self, k: int) -> Tuple[int, ...]:
        """H_k, ascending."""
        if not 1 <= k <= self.K:
            raise ValueError(f"User {k} not in [1..{self.K}]")
        return self.users[k - 1]

    def users_of(self, h: int) -> UserSet:
        """U_h, ascending."""
        if not 1 <= h <= self.H:
            raise ValueError(f"Relay {h} not in [1..{self.H}]")
        return self.relay_users[h - 1]


def build_network(params: NetworkParams) -> NetworkTopology:
    H, r = params.H, params.r
    relay_sets = sorted(itertools.combinations(range(1, H + 1), r), key=colex_key)

    relay_users: Dict[int, List[int]] = {h: [] for h in range(1, H + 1)}
    for k, relays in enumerate(relay_sets, start=1):
        for h in relays:
            relay_users[h].append(k)

    topo = NetworkTopology(
        params=params,
        users=tuple(relay_sets),
        relay_users=tuple(tuple(relay_users[h]) for h in range(1, H + 1)),
    )

    K1 = params.K1
    assert all(len(u) == K1 for u in topo.relay_users)
    return topo


def k_i(H: int, r: int, i: int) -> int:
    """K_i = C(H - i, r - i), the number of users attached to any fixed i relays."""
    if not (0 <= i <= r <= H):
        raise ValueError(f"k_i needs 0 <= i <= r <= H, got H={H}, r={r}, i={i}")
    return binom(H - i, r - i)


def common_relays(topo: NetworkTopology, W: Iterable[int]) -> RelaySet:
    """R_W: relays connected to every user in W."""
    W = list(W)
    if not W:
        raise ValueError("common_relays needs a nonempty user set")
    result = set(topo.relays_of(W[0]))
    for k in W[1:]:
        result &= set(topo.relays_of(k))
    return frozenset(result)


def common_users(topo: NetworkTopology, Y: Iterable[int]) -> UserSet:
    """U_Y: users connected to every relay in Y."""
    Y = list(Y)
    if not Y:
        raise ValueError("common_users needs a nonempty relay set")
    result = set(topo.users_of(Y[0]))
    for h in Y[1:]:
        result &= set(topo.users_of(h))
    return make_user_set(result)


def _check_cap(count: int, what: str):
    if count > ENUMERATION_CAP:
        raise EnumerationCapExceeded(
            f"{what} would visit {count} subsets, above the cap of {ENUMERATION_CAP}"
        )


def enumerate_z(topo: NetworkTopology, t: int) -> List[UserSet]:
    """Z_t: t-subsets of users sharing at least one relay, colex order.

    R_W is nonempty exactly when W fits inside some U_h, so the candidates are
    the t-subsets of each U_h, deduplicated.
    """
    if t < 1:
        raise ValueError(f"enumerate_z needs t >= 1, got {t}")
    if t > topo.K1:
        return []

    _check_cap(topo.H * math.comb(topo.K1, t), f"enumerate_z(t={t})")

    found = set()
    for users in topo.relay_users:
        found.update(itertools.combinations(users, t))
    return sorted(found, key=colex_key)


def brute_force_z(topo: NetworkTopology, t: int) -> List[UserSet]:
    """Z_t straight from its definition, over every t-subset of [K]."""
    if t < 1:
        raise ValueError(f"brute_force_z needs t >= 1, got {t}")
    _check_cap(binom(topo.K, t), f"brute_force_z(t={t})")

    res = [
        W
        for W in itertools.combinations(range(1, topo.K + 1), t)
        if common_relays(topo, W)
    ]
    return sorted(res, key=colex_key)


def count_z(H: int, r: int, t: int) -> int:
    """|Z_t| by inclusion-exclusion over the number of shared relays."""
    if t < 1:
        raise ValueError(f"count_z needs t >= 1, got {t}")
    return sum(
        binom(H, n) * binom(k_i(H, r, n), t) * (-1) ** (n - 1)
        for n in range(1, r + 1)
    )


def per_user_incidence(H: int, r: int, t: int) -> int:
    """Number of sets in Z_t containing any fixed user, i.e. t|Z_t|/K."""
    if t < 1:
        raise ValueError(f"per_user_incidence needs t >= 1, got {t}")
    rhs = sum(
        binom(r, n) * binom(k_i(H, r, n) - 1, t - 1) * (-1) ** (n - 1)
        for n in range(1, r + 1)
    )
    K = math.comb(H, r)
    if t * count_z(H, r, t) != K * rhs:
        raise ConsistencyError(
            f"t|Z_t| = {t * count_z(H, r, t)} but K * incidence = {K * rhs} "
            f"for H={H}, r={r}, t={t}"
        )
    return rhs
