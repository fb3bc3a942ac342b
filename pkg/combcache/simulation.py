"""
Byte-level runs of one scheme on one demand: place, deliver, decode at every
user, measure. check_invariants then holds the measurements against the
closed forms.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from combcache.analysis.memory import (
    SchemePoint,
    SubpacketCounts,
    routing_point,
    scheme_point,
)
from combcache.schemes import (
    DecodeFailure,
    DemandVector,
    LinkTranscript,
    MeasuredLoads,
    SchemeConfig,
    get_scheme,
    measure_loads,
    minimal_file_size,
)
from combcache.shared.scheme_kind import CheckStatus, SchemeKind
from combcache.topology import NetworkParams, NetworkTopology, build_network


class InvariantViolation(AssertionError):
    pass


@dataclass
class SimulationReport:
    topo: NetworkTopology
    config: SchemeConfig
    demand: DemandVector
    B: int
    loads: MeasuredLoads
    message_count: int
    cache_bytes: Dict[int, int]
    decoded: Dict[int, bool]
    transcript: LinkTranscript
    counts: Optional[SubpacketCounts] = None

    @property
    def passed(self) -> bool:
        return all(self.decoded.values())

    @property
    def M(self) -> Fraction:
        """Measured cache size in files (largest cache over users)."""
        return Fraction(max(self.cache_bytes.values(), default=0), self.B)

    def failed_users(self) -> List[int]:
        return [k for k, ok in self.decoded.items() if not ok]

    def user_status(self) -> Dict[int, str]:
        return {k: CheckStatus.PASS if ok else CheckStatus.FAIL for k, ok in self.decoded.items()}


def run_simulation(
    topo: NetworkTopology,
    config: SchemeConfig,
    library: Sequence[bytes],
    demand: DemandVector,
    dump_path: Optional[str] = None,
) -> SimulationReport:
    scheme = get_scheme(config.kind)
    layout, caches, meta = scheme.place(topo, config, library)
    transcript = scheme.deliver(topo, config, layout, meta, demand)
    transcript.verify_forwarding()
    if dump_path:
        transcript.dump(dump_path)
        logging.info(f"Transcript written to {dump_path}")

    decoded = {}
    for cache in caches:
        k = cache.user
        try:
            out = scheme.decode(
                topo, config, layout, meta, k, cache, transcript.received_by(k), demand
            )
            decoded[k] = out == library[demand.of(k) - 1]
        except DecodeFailure as e:
            logging.error(str(e))
            decoded[k] = False
        if not decoded[k]:
            logging.error(f"User {k} did not recover file {demand.of(k)}")

    return SimulationReport(
        topo=topo,
        config=config,
        demand=demand,
        B=topo.params.B,
        loads=measure_loads(transcript, topo.params.B),
        message_count=transcript.message_count(),
        cache_bytes={c.user: c.total_bytes for c in caches},
        decoded=decoded,
        transcript=transcript,
        counts=meta.counts,
    )


def check_invariants(report: SimulationReport, point: SchemePoint):
    """Raises DecodeFailure or InvariantViolation; returns None when all hold."""
    if not report.passed:
        raise DecodeFailure(f"Users {report.failed_users()} failed to decode")

    topo, B = report.topo, report.B
    N = topo.params.N

    budget = point.M * B
    for k, used in report.cache_bytes.items():
        if used != budget:
            raise InvariantViolation(f"User {k} caches {used} bytes, budget is {budget}")

    if report.loads.R1 != point.R1:
        raise InvariantViolation(f"Measured R1={report.loads.R1}, closed form {point.R1}")
    if report.loads.R2 != point.R2:
        raise InvariantViolation(f"Measured R2={report.loads.R2}, closed form {point.R2}")
    if topo.r * report.loads.R2 != 1 - point.M / N:
        raise InvariantViolation(f"r*R2={topo.r * report.loads.R2} != 1 - M/N")

    relay_bytes, user_bytes = report.transcript.link_byte_counts(topo)
    if len(set(relay_bytes.values())) > 1:
        raise InvariantViolation(f"Server->relay loads differ: {relay_bytes}")
    if len(set(user_bytes.values())) > 1:
        raise InvariantViolation(f"Relay->user loads differ: {sorted(set(user_bytes.values()))}")

    report.transcript.verify_forwarding()

    if report.config.kind in SchemeKind.CODED and report.message_count != report.counts.k3:
        raise InvariantViolation(
            f"{report.message_count} multicast messages, expected k3={report.counts.k3}"
        )


def sized_network(H: int, r: int, N: int, config: SchemeConfig, requested_B: int) -> NetworkTopology:
    """The network with the smallest valid file size >= requested_B."""
    probe = build_network(NetworkParams(H=H, r=r, N=N))
    B = minimal_file_size(probe, config, requested_B)
    if B != requested_B:
        logging.info(f"File size {requested_B} rounded up to {B} for {config.kind}")
    return build_network(NetworkParams(H=H, r=r, N=N, B=B))


def expected_point(topo: NetworkTopology, config: SchemeConfig) -> SchemePoint:
    N = topo.params.N
    if config.kind == SchemeKind.ROUTING:
        return routing_point(N, topo.H, topo.r, config.m_fraction)
    return scheme_point(config.kind, N, topo.H, topo.r, config.g)
