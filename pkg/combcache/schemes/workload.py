"""Seeded file contents and demand vectors for simulations."""

from typing import List

import numpy as np

from combcache.schemes.base import DemandVector, InvalidDemandError


def random_library(N: int, B: int, seed: int) -> List[bytes]:
    """N files of B bytes from numpy's PCG64 generator, one row per file."""
    rng = np.random.default_rng(seed)
    data = rng.integers(0, 256, size=(N, B), dtype=np.uint8)
    return [row.tobytes() for row in data]


def worst_case_demand(K: int, N: int) -> DemandVector:
    """All-distinct requests, user k asks for file k."""
    if N < K:
        raise InvalidDemandError(
            f"All-distinct demands need N >= K, got N={N}, K={K}; pass an explicit demand"
        )
    return DemandVector(d=tuple(range(1, K + 1)))


def random_demand(K: int, N: int, rng: np.random.Generator) -> DemandVector:
    return DemandVector(d=tuple(int(i) for i in rng.integers(1, N + 1, size=K)))


def parse_demand(text: str) -> DemandVector:
    """'1,2,3' -> DemandVector((1, 2, 3))"""
    try:
        return DemandVector(d=tuple(int(x) for x in text.split(",") if x.strip()))
    except ValueError as e:
        raise InvalidDemandError(f"Cannot parse demand {text!r}") from e
