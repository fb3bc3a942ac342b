import pytest

from combcache.topology import NetworkParams, build_network

# The (4, 2) network is usually drawn with users numbered in lexicographic
# order of their relay pairs; we number in colex order. The two labelings
# differ by swapping users 3 and 4.
LEX_TO_COLEX_4_2 = {1: 1, 2: 2, 3: 4, 4: 3, 5: 5, 6: 6}

# U_1..U_4 in the lexicographic labeling.
LEX_RELAY_USERS_4_2 = [{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 5, 6}]


def to_colex(users):
    return {LEX_TO_COLEX_4_2[k] for k in users}


@pytest.fixture
def network_4_2():
    return build_network(NetworkParams(H=4, r=2, N=6))


@pytest.fixture
def network_6_3():
    return build_network(NetworkParams(H=6, r=3, N=20))
