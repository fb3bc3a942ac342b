import math

from combcache.schemes import SchemeConfig
from combcache.schemes.workload import random_library
from combcache.simulation import expected_point, run_simulation, sized_network
from combcache.topology import k_i


def networks_up_to(max_K: int, max_H: int = 30):
    """Every (H, r) with K = C(H, r) <= max_K."""
    for H in range(1, max_H + 1):
        for r in range(1, H + 1):
            if math.comb(H, r) <= max_K:
                yield H, r


def coded_cases(networks, kinds):
    for H, r in networks:
        for kind in kinds:
            for g in range(1, k_i(H, r, 1) + 1):
                yield H, r, kind, g


def simulate(H, r, config: SchemeConfig, demand, N=None, requested_B=1, seed=0):
    N = N or math.comb(H, r)
    topo = sized_network(H, r, N, config, requested_B)
    library = random_library(N, topo.params.B, seed)
    report = run_simulation(topo, config, library, demand)
    return report, expected_point(topo, config), library
