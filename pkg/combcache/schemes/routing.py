from fractions import Fraction
from typing import Sequence

from combcache.schemes.base import (
    CacheContents,
    CachingScheme,
    DecodeFailure,
    DemandVector,
    PlacementMeta,
    SchemeConfig,
    SubfileLayout,
)
from combcache.schemes.transcript import LinkTranscript, MessageKind, MessageTag
from combcache.shared.scheme_kind import SchemeKind
from combcache.shared.utils import split_even
from combcache.topology import NetworkTopology

PREFIX = 1
SUFFIX = 2


class RoutingScheme(CachingScheme):
    """Uncoded caching with unicast delivery.

    Every user stores the leading M/N of every file. The rest of F_{d_k} is
    cut into r equal pieces, one per relay of user k.
    """

    kind = SchemeKind.ROUTING

    def required_granularity(self, topo: NetworkTopology, config: SchemeConfig) -> int:
        config.validate(topo)
        return Fraction(config.m_fraction).denominator * topo.r

    def place(self, topo: NetworkTopology, config: SchemeConfig, library: Sequence[bytes]):
        self.check_library(topo, config, library)
        B = topo.params.B
        prefix_len = int(Fraction(config.m_fraction) * B)

        server_files = tuple((bytes(f[:prefix_len]), bytes(f[prefix_len:])) for f in library)
        layout = SubfileLayout.build(
            keys=["prefix", "suffix"],
            owners=[tuple(range(1, topo.K + 1)), ()],
            relay_scope=[(), tuple(range(1, topo.H + 1))],
        )
        caches = []
        for k in range(1, topo.K + 1):
            cache = CacheContents(user=k)
            if prefix_len:
                for i, (prefix, _) in enumerate(server_files, start=1):
                    cache.entries[(i, PREFIX)] = prefix
            caches.append(cache)
        meta = PlacementMeta(B=B, server_files=server_files, prefix_len=prefix_len)
        return layout, caches, meta

    def deliver(
        self,
        topo: NetworkTopology,
        config: SchemeConfig,
        layout: SubfileLayout,
        meta: PlacementMeta,
        demand: DemandVector,
    ) -> LinkTranscript:
        demand.validate(topo.K, topo.params.N)
        transcript = LinkTranscript()
        for k in range(1, topo.K + 1):
            suffix = meta.server_files[demand.of(k) - 1][SUFFIX - 1]
            if not suffix:
                continue
            relays = topo.relays_of(k)
            for piece, (h, part) in enumerate(zip(relays, split_even(suffix, topo.r))):
                tag = MessageTag(
                    kind=MessageKind.UNICAST, users=(k,), relay=h, piece=piece, pieces=topo.r
                )
                transcript.send(tag, part)
        return transcript

    def decode(
        self,
        topo: NetworkTopology,
        config: SchemeConfig,
        layout: SubfileLayout,
        meta: PlacementMeta,
        k: int,
        cache: CacheContents,
        received,
        demand: DemandVector,
    ) -> bytes:
        prefix = cache.entries.get((demand.of(k), PREFIX), b"")
        parts = sorted(
            (m for messages in received.values() for m in messages if m.tag.users == (k,)),
            key=lambda m: m.tag.piece,
        )
        res = prefix + b"".join(m.payload for m in parts)
        if len(res) != meta.B:
            raise DecodeFailure(f"User {k} rebuilt {len(res)} of {meta.B} bytes")
        return res
