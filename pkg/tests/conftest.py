import pytest

from mdst.graph import Graph


def build(edges, nodes=None):
    nodes = sorted({x for u, v, _ in edges for x in (u, v)}) if nodes is None else nodes
    return Graph.from_edges(nodes, edges)


@pytest.fixture
def k2():
    return build([(1, 2, 1)])


@pytest.fixture
def k2w2():
    return build([(1, 2, 2)])


@pytest.fixture
def path3():
    return build([(1, 2, 1), (2, 3, 1)])


@pytest.fixture
def path3w():
    return build([(1, 2, 1), (2, 3, 2)])


@pytest.fixture
def c4():
    return build([(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)])


@pytest.fixture
def single():
    return Graph.from_edges([1], [])
