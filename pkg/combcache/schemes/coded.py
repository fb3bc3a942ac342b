"""
Shared machinery of the two MDS-coded schemes.

Each file is cut into k = k1 + k2 equal pieces and encoded with a systematic
(n, k) MDS code; coded symbol i is subfile i of the layout. A user caches the
subfiles whose owner set contains it, then recovers k2 more of the requested
file from the delivery: every multicast message is the XOR over j in J of the
subfile of d_j owned by J \\ {j}, so user k strips the other |J| - 1 terms with
its cache. Any k distinct symbols rebuild the file.
"""

import abc
import logging
import math
from collections import defaultdict
from typing import Dict, Hashable, List, Sequence, Tuple

from combcache.analysis.memory import SubpacketCounts, k_counts
from combcache.gfmds import CodedSymbolBlock, MdsCode, mds_decode, mds_encode
from combcache.schemes.base import (
    CacheContents,
    CachingScheme,
    DecodeFailure,
    DemandVector,
    PlacementMeta,
    SchemeConfig,
    SubfileLayout,
)
from combcache.schemes.transcript import (
    LinkTranscript,
    MessageTag,
    ReceivedMessages,
)
from combcache.shared.utils import split_even, xor_bytes
from combcache.topology import ConsistencyError, NetworkTopology, UserSet

MulticastGroup = Tuple[UserSet, Tuple[int, ...]]


def without(J: UserSet, k: int) -> UserSet:
    return tuple(j for j in J if j != k)


class CodedScheme(CachingScheme):
    message_kind: str
    # Whether the same user set J is served separately by every relay.
    per_relay: bool

    @abc.abstractmethod
    def build_layout(self, topo: NetworkTopology, g: int) -> SubfileLayout:
        pass

    @abc.abstractmethod
    def groups(self, topo: NetworkTopology, g: int) -> List[MulticastGroup]:
        """(J, relays carrying W_J in order) for every multicast message."""

    @abc.abstractmethod
    def subfile_key(self, J: UserSet, relays: Tuple[int, ...], k: int) -> Hashable:
        """Layout key of the subfile user k decodes from the message for J."""

    def counts(self, topo: NetworkTopology, g: int) -> SubpacketCounts:
        return k_counts(self.kind, topo.H, topo.r, g)

    def code_for(self, topo: NetworkTopology, g: int) -> Tuple[SubpacketCounts, MdsCode]:
        counts = self.counts(topo, g)
        return counts, MdsCode.for_parameters(counts.n, counts.k)

    def required_granularity(self, topo: NetworkTopology, config: SchemeConfig) -> int:
        config.validate(topo)
        counts, code = self.code_for(topo, config.g)
        return counts.k * math.lcm(*range(1, topo.r + 1)) * code.symbol_bytes

    def place(self, topo: NetworkTopology, config: SchemeConfig, library: Sequence[bytes]):
        self.check_library(topo, config, library)
        counts, code = self.code_for(topo, config.g)
        layout = self.build_layout(topo, config.g)
        if layout.n != counts.n:
            raise ConsistencyError(f"Layout has {layout.n} subfiles, counts give n={counts.n}")

        server_files = []
        for f in library:
            blocks = mds_encode(code, split_even(bytes(f), counts.k))
            server_files.append(tuple(b.payload for b in blocks))

        caches = []
        for k in range(1, topo.K + 1):
            owned = layout.owned_by(k)
            if len(owned) != counts.k1:
                raise ConsistencyError(f"User {k} owns {len(owned)} subfiles, expected {counts.k1}")
            cache = CacheContents(user=k)
            for i, coded in enumerate(server_files, start=1):
                for idx in owned:
                    cache.entries[(i, idx)] = coded[idx - 1]
            caches.append(cache)

        logging.info(
            f"{self.kind} placement g={config.g}: MDS ({code.n}, {code.k}) over GF(2^{code.w}), "
            f"{counts.k1} cached subfiles per file per user"
        )
        meta = PlacementMeta(
            B=topo.params.B,
            server_files=tuple(server_files),
            subfile_len=topo.params.B // counts.k,
            code=code,
            counts=counts,
        )
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
        for J, relays in self.groups(topo, config.g):
            payload = xor_bytes(
                meta.server_files[demand.of(j) - 1][
                    layout.index_of[self.subfile_key(J, relays, j)] - 1
                ]
                for j in J
            )
            for piece, (h, part) in enumerate(zip(relays, split_even(payload, len(relays)))):
                tag = MessageTag(
                    kind=self.message_kind, users=J, relay=h, piece=piece, pieces=len(relays)
                )
                transcript.send(tag, part)
        return transcript

    def _recovered_symbols(
        self,
        layout: SubfileLayout,
        k: int,
        cache: CacheContents,
        received: ReceivedMessages,
        demand: DemandVector,
    ) -> Dict[int, bytes]:
        pieces = defaultdict(dict)
        for h, messages in received.items():
            for m in messages:
                key = (m.tag.users, m.tag.relay if self.per_relay else None)
                pieces[key][m.tag.piece] = m

        res = {}
        for (J, _), parts in pieces.items():
            total = next(iter(parts.values())).tag.pieces
            if sorted(parts) != list(range(total)):
                raise DecodeFailure(f"User {k} got pieces {sorted(parts)} of {total} for {J}")
            ordered = [parts[p] for p in range(total)]
            relays = tuple(m.tag.relay for m in ordered)

            terms = [b"".join(m.payload for m in ordered)]
            for j in without(J, k):
                idx = layout.index_of[self.subfile_key(J, relays, j)]
                cached = cache.entries.get((demand.of(j), idx))
                if cached is None:
                    raise DecodeFailure(f"User {k} lacks subfile {idx} of file {demand.of(j)}")
                terms.append(cached)
            res[layout.index_of[self.subfile_key(J, relays, k)]] = xor_bytes(terms)
        return res

    def decode(
        self,
        topo: NetworkTopology,
        config: SchemeConfig,
        layout: SubfileLayout,
        meta: PlacementMeta,
        k: int,
        cache: CacheContents,
        received: ReceivedMessages,
        demand: DemandVector,
    ) -> bytes:
        wanted = demand.of(k)
        known = {idx: p for (i, idx), p in cache.entries.items() if i == wanted}
        for idx, payload in self._recovered_symbols(layout, k, cache, received, demand).items():
            if idx in known:
                raise DecodeFailure(f"User {k} was sent subfile {idx}, which it caches")
            known[idx] = payload

        if len(known) < meta.code.k:
            raise DecodeFailure(f"User {k} holds {len(known)} symbols, needs {meta.code.k}")
        try:
            pieces = mds_decode(
                meta.code, [CodedSymbolBlock(index=i, payload=p) for i, p in known.items()]
            )
        except ValueError as e:
            raise DecodeFailure(f"User {k}: {e}") from e
        return b"".join(pieces)
