"""
Record of every server->relay and relay->user message of one delivery.

Relays are memoryless forwarders: whatever relay h passes to user k must have
reached h from the server first. The record keeps both hops so that property
and the per-link byte counts can be checked instead of assumed.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from combcache.shared.utils import generate_md5_hash, save_jsonl
from combcache.topology import NetworkTopology, UserSet


class MessageKind:
    UNICAST = "unicast"
    RELAY_MULTICAST = "relay_multicast"
    MULTICAST = "multicast"


class ForwardingError(AssertionError):
    pass


@dataclass(frozen=True)
class MessageTag:
    kind: str
    users: UserSet  # the multicast set J (a single user for unicasts)
    relay: int
    piece: int = 0  # 0-based
    pieces: int = 1

    def __str__(self):
        users = "-".join(str(k) for k in self.users)
        return f"{self.kind}:{users}@{self.relay}#{self.piece + 1}/{self.pieces}"


@dataclass(frozen=True)
class Message:
    tag: MessageTag
    payload: bytes


ReceivedMessages = Dict[int, List[Message]]


@dataclass
class LinkTranscript:
    server_to_relay: Dict[int, List[Message]] = field(
        default_factory=lambda: defaultdict(list)
    )
    relay_to_user: Dict[Tuple[int, int], List[Message]] = field(
        default_factory=lambda: defaultdict(list)
    )

    def send(self, tag: MessageTag, payload: bytes):
        """Server -> tag.relay, then tag.relay -> every user in tag.users."""
        msg = Message(tag=tag, payload=payload)
        self.server_to_relay[tag.relay].append(msg)
        for k in tag.users:
            self.relay_to_user[(tag.relay, k)].append(msg)

    def received_by(self, k: int) -> ReceivedMessages:
        """Messages reaching user k, grouped by relay."""
        res = {}
        for (h, user), messages in sorted(self.relay_to_user.items()):
            if user == k:
                res[h] = list(messages)
        return res

    def message_count(self) -> int:
        """Number of distinct multicast messages (pieces of one message count once)."""
        keys = set()
        for messages in self.server_to_relay.values():
            for m in messages:
                relay = m.tag.relay if m.tag.kind == MessageKind.RELAY_MULTICAST else None
                keys.add((m.tag.kind, m.tag.users, relay))
        return len(keys)

    def link_byte_counts(self, topo: NetworkTopology):
        """Bytes per server->relay link and per relay->user link, zeros included."""
        relay_bytes = {h: 0 for h in range(1, topo.H + 1)}
        user_bytes = {}
        for h in range(1, topo.H + 1):
            for k in topo.users_of(h):
                user_bytes[(h, k)] = 0

        for h, messages in self.server_to_relay.items():
            relay_bytes[h] += sum(len(m.payload) for m in messages)
        for link, messages in self.relay_to_user.items():
            if link not in user_bytes:
                raise ForwardingError(f"Relay {link[0]} is not connected to user {link[1]}")
            user_bytes[link] += sum(len(m.payload) for m in messages)
        return relay_bytes, user_bytes

    def verify_forwarding(self):
        upstream = {
            h: {(m.tag, m.payload) for m in messages}
            for h, messages in self.server_to_relay.items()
        }
        for (h, k), messages in self.relay_to_user.items():
            for m in messages:
                if k not in m.tag.users:
                    raise ForwardingError(f"{m.tag} delivered to user {k} outside its set")
                if (m.tag, m.payload) not in upstream.get(h, ()):
                    raise ForwardingError(f"{m.tag} reached user {k} without passing relay {h}")

    def records(self) -> List[dict]:
        res = []
        for h in sorted(self.server_to_relay):
            for m in self.server_to_relay[h]:
                res.append(_record("server_to_relay", h, None, m))
        for h, k in sorted(self.relay_to_user):
            for m in self.relay_to_user[(h, k)]:
                res.append(_record("relay_to_user", h, k, m))
        return res

    def dump(self, fname: str):
        save_jsonl(fname, self.records())


def _record(direction: str, relay: int, user, m: Message) -> dict:
    return {
        "direction": direction,
        "relay": relay,
        "user": user,
        "multicast_set": list(m.tag.users),
        "tag": str(m.tag),
        "byte_length": len(m.payload),
        "payload_md5": generate_md5_hash(m.payload),
    }


@dataclass(frozen=True)
class MeasuredLoads:
    R1: Fraction
    R2: Fraction


def measure_loads(transcript: LinkTranscript, B: int) -> MeasuredLoads:
    relay = [sum(len(m.payload) for m in ms) for ms in transcript.server_to_relay.values()]
    user = [sum(len(m.payload) for m in ms) for ms in transcript.relay_to_user.values()]
    return MeasuredLoads(
        R1=Fraction(max(relay, default=0), B),
        R2=Fraction(max(user, default=0), B),
    )
