from typing import Sequence

from combcache.schemes.asymmetric import AsymmetricScheme
from combcache.schemes.base import (
    CacheContents,
    CachingScheme,
    DecodeFailure,
    DemandVector,
    FileSizeError,
    InvalidDemandError,
    InvalidSchemeConfigError,
    PlacementMeta,
    SchemeConfig,
    SubfileLayout,
)
from combcache.schemes.baseline import BaselineScheme
from combcache.schemes.routing import RoutingScheme
from combcache.schemes.transcript import (
    LinkTranscript,
    MeasuredLoads,
    ReceivedMessages,
    measure_loads,
)
from combcache.shared.scheme_kind import SchemeKind
from combcache.topology import NetworkTopology

_SCHEMES = {
    SchemeKind.ROUTING: RoutingScheme(),
    SchemeKind.BASELINE: BaselineScheme(),
    SchemeKind.ASYMMETRIC: AsymmetricScheme(),
}


def get_scheme(kind: str) -> CachingScheme:
    if kind not in _SCHEMES:
        raise InvalidSchemeConfigError(f"Unknown scheme {kind!r}, expected one of {SchemeKind.ALL}")
    return _SCHEMES[kind]


def place(topo: NetworkTopology, config: SchemeConfig, library: Sequence[bytes]):
    return get_scheme(config.kind).place(topo, config, library)


def deliver(
    topo: NetworkTopology,
    config: SchemeConfig,
    layout: SubfileLayout,
    meta: PlacementMeta,
    demand: DemandVector,
) -> LinkTranscript:
    return get_scheme(config.kind).deliver(topo, config, layout, meta, demand)


def decode(
    topo: NetworkTopology,
    config: SchemeConfig,
    layout: SubfileLayout,
    meta: PlacementMeta,
    k: int,
    cache: CacheContents,
    received: ReceivedMessages,
    demand: DemandVector,
) -> bytes:
    return get_scheme(config.kind).decode(
        topo, config, layout, meta, k, cache, received, demand
    )


def required_granularity(topo: NetworkTopology, config: SchemeConfig) -> int:
    return get_scheme(config.kind).required_granularity(topo, config)


def minimal_file_size(topo: NetworkTopology, config: SchemeConfig, requested: int) -> int:
    """Smallest valid B that is at least `requested`."""
    gran = required_granularity(topo, config)
    if requested <= gran:
        return gran
    return -(-requested // gran) * gran


__all__ = [
    "CacheContents",
    "DecodeFailure",
    "DemandVector",
    "FileSizeError",
    "InvalidDemandError",
    "InvalidSchemeConfigError",
    "LinkTranscript",
    "MeasuredLoads",
    "SchemeConfig",
    "SubfileLayout",
    "decode",
    "deliver",
    "get_scheme",
    "measure_loads",
    "minimal_file_size",
    "place",
    "required_granularity",
]
