from typing import List, Tuple

from combcache.schemes.base import SubfileLayout
from combcache.schemes.coded import CodedScheme, MulticastGroup, without
from combcache.schemes.transcript import MessageKind
from combcache.shared.scheme_kind import SchemeKind
from combcache.topology import NetworkTopology, UserSet, common_relays, enumerate_z


class AsymmetricScheme(CodedScheme):
    """Placement over the user sets that share a relay.

    Subfile f_W exists for every W in Z_{g-1} and is cached by the users in W
    (for g = 1 there is one subfile, owned by nobody). For every J in Z_g the
    server forms W_J = XOR_{k in J} f_{d_k, J \\ {k}} and cuts it into |R_J|
    contiguous pieces, one per common relay in ascending order.
    """

    kind = SchemeKind.ASYMMETRIC
    message_kind = MessageKind.MULTICAST
    per_relay = False

    def build_layout(self, topo: NetworkTopology, g: int) -> SubfileLayout:
        all_relays = tuple(range(1, topo.H + 1))
        keys = [()] if g == 1 else enumerate_z(topo, g - 1)
        scope = [tuple(sorted(common_relays(topo, W))) if W else all_relays for W in keys]
        return SubfileLayout.build(keys, keys, scope)

    def groups(self, topo: NetworkTopology, g: int) -> List[MulticastGroup]:
        return [(J, tuple(sorted(common_relays(topo, J)))) for J in enumerate_z(topo, g)]

    def subfile_key(self, J: UserSet, relays: Tuple[int, ...], k: int):
        return without(J, k)
