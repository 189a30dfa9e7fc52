from fractions import Fraction

import pytest

from dcrel import BipartiteInstance, Graph, NetworkInstance

HALF = Fraction(1, 2)


@pytest.fixture
def triangle():
    return Graph(3, ((0, 1), (0, 2), (1, 2)))


@pytest.fixture
def tri_k2(triangle):
    """Triangle, K = {0, 1}, d = 2, all p = 1/2 (exact R = 5/8)."""
    return NetworkInstance.uniform(triangle, {0, 1}, 2, HALF)


@pytest.fixture
def c6():
    return BipartiteInstance(3, 3, ((0, 0), (0, 2), (1, 0), (1, 1), (2, 1), (2, 2)))


@pytest.fixture
def single_edge_bip():
    return BipartiteInstance(1, 1, ((0, 0),))


TRI_TEXT = """\
# triangle, two terminals
nodes 3
edge 0 1 p 1/2
edge 0 2 p 1/2
edge 1 2 p 1/2
terminals 0 1
diameter 2
"""

C6_TEXT = """\
a_nodes 3
b_nodes 3
edge 0 0
edge 0 2
edge 1 0
edge 1 1
edge 2 1
edge 2 2
"""
