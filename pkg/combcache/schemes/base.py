import abc
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from combcache.analysis.memory import InvalidGainError, SubpacketCounts, validate_gain
from combcache.gfmds import MdsCode
from combcache.schemes.transcript import LinkTranscript, ReceivedMessages
from combcache.shared.scheme_kind import SchemeKind
from combcache.topology import NetworkTopology, UserSet

# (file ID, subfile index), both 1-based.
CacheKey = Tuple[int, int]


class InvalidSchemeConfigError(ValueError):
    pass


class InvalidDemandError(ValueError):
    pass


class FileSizeError(ValueError):
    pass


class DecodeFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class SchemeConfig:
    kind: str
    g: Optional[int] = None
    m_fraction: Optional[Fraction] = None

    def validate(self, topo: NetworkTopology):
        if self.kind not in SchemeKind.ALL:
            raise InvalidSchemeConfigError(
                f"Unknown scheme {self.kind!r}, expected one of {SchemeKind.ALL}"
            )
        if self.kind == SchemeKind.ROUTING:
            if self.m_fraction is None:
                raise InvalidSchemeConfigError("routing needs m_fraction")
            if not 0 <= Fraction(self.m_fraction) <= 1:
                raise InvalidSchemeConfigError(f"m_fraction={self.m_fraction} outside [0, 1]")
            return
        if self.g is None:
            raise InvalidSchemeConfigError(f"{self.kind} needs a gain g")
        try:
            validate_gain(topo.H, topo.r, self.g)
        except InvalidGainError as e:
            raise InvalidSchemeConfigError(str(e)) from e


@dataclass(frozen=True)
class DemandVector:
    d: Tuple[int, ...]

    def validate(self, K: int, N: int):
        if len(self.d) != K:
            raise InvalidDemandError(f"Demand vector has {len(self.d)} entries, expected K={K}")
        for k, i in enumerate(self.d, start=1):
            if not isinstance(i, int) or not 1 <= i <= N:
                raise InvalidDemandError(f"User {k} demands file {i!r}, not in [1..{N}]")

    def of(self, k: int) -> int:
        """d_k"""
        return self.d[k - 1]


@dataclass(frozen=True)
class SubfileLayout:
    n: int
    keys: Tuple[Hashable, ...]  # keys[i - 1] names subfile i
    owners: Tuple[UserSet, ...]
    relay_scope: Tuple[Tuple[int, ...], ...]
    index_of: Dict[Hashable, int] = field(compare=False)

    @classmethod
    def build(cls, keys: Sequence[Hashable], owners, relay_scope) -> "SubfileLayout":
        return cls(
            n=len(keys),
            keys=tuple(keys),
            owners=tuple(owners),
            relay_scope=tuple(tuple(s) for s in relay_scope),
            index_of={key: i for i, key in enumerate(keys, start=1)},
        )

    def owned_by(self, k: int) -> List[int]:
        return [i for i, owners in enumerate(self.owners, start=1) if k in owners]


@dataclass
class CacheContents:
    user: int
    entries: Dict[CacheKey, bytes] = field(default_factory=dict)

    @property
    def total_bytes(self) -> int:
        return sum(len(p) for p in self.entries.values())


@dataclass(frozen=True)
class PlacementMeta:
    B: int
    # Server-side copy of every file, split into its n subfiles.
    server_files: Tuple[Tuple[bytes, ...], ...]
    subfile_len: int = 0
    code: Optional[MdsCode] = None
    counts: Optional[SubpacketCounts] = None
    prefix_len: int = 0


class CachingScheme(abc.ABC):
    kind: str

    @abc.abstractmethod
    def required_granularity(self, topo: NetworkTopology, config: SchemeConfig) -> int:
        """Smallest B such that every split the scheme makes is exact."""

    @abc.abstractmethod
    def place(
        self, topo: NetworkTopology, config: SchemeConfig, library: Sequence[bytes]
    ) -> Tuple[SubfileLayout, List[CacheContents], PlacementMeta]:
        pass

    @abc.abstractmethod
    def deliver(
        self,
        topo: NetworkTopology,
        config: SchemeConfig,
        layout: SubfileLayout,
        meta: PlacementMeta,
        demand: DemandVector,
    ) -> LinkTranscript:
        pass

    @abc.abstractmethod
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
        """Returns F_{d_k}, or raises DecodeFailure."""

    def check_library(self, topo: NetworkTopology, config: SchemeConfig, library):
        config.validate(topo)
        if len(library) != topo.params.N:
            raise FileSizeError(f"Library has {len(library)} files, expected N={topo.params.N}")
        sizes = {len(f) for f in library}
        if sizes != {topo.params.B}:
            raise FileSizeError(f"File sizes {sorted(sizes)} differ from B={topo.params.B}")
        gran = self.required_granularity(topo, config)
        if topo.params.B % gran != 0:
            raise FileSizeError(
                f"B={topo.params.B} is not a multiple of {gran} for {config.kind}"
            )
