import itertools
from typing import List, Tuple

from combcache.schemes.base import SubfileLayout
from combcache.schemes.coded import CodedScheme, MulticastGroup, without
from combcache.schemes.transcript import MessageKind
from combcache.shared.scheme_kind import SchemeKind
from combcache.topology import NetworkTopology, UserSet, colex_key


def _subsets(users: UserSet, size: int) -> List[UserSet]:
    return sorted(itertools.combinations(users, size), key=colex_key)


class BaselineScheme(CodedScheme):
    """Symmetric per-relay placement.

    Relay h gets its own share of every coded file, split over the
    (g-1)-subsets W of U_h; subfile s^h_W is cached by the users in W. For each
    g-subset J of U_h, relay h multicasts XOR_{k in J} s^h_{d_k, J \\ {k}}.
    Subfiles are indexed by (h, W), ascending in h, colex in W.
    """

    kind = SchemeKind.BASELINE
    message_kind = MessageKind.RELAY_MULTICAST
    per_relay = True

    def build_layout(self, topo: NetworkTopology, g: int) -> SubfileLayout:
        keys, owners, scope = [], [], []
        for h in range(1, topo.H + 1):
            for W in _subsets(topo.users_of(h), g - 1):
                keys.append((h, W))
                owners.append(W)
                scope.append((h,))
        return SubfileLayout.build(keys, owners, scope)

    def groups(self, topo: NetworkTopology, g: int) -> List[MulticastGroup]:
        return [
            (J, (h,))
            for h in range(1, topo.H + 1)
            for J in _subsets(topo.users_of(h), g)
        ]

    def subfile_key(self, J: UserSet, relays: Tuple[int, ...], k: int):
        return relays[0], without(J, k)
