import random

import pytest

from mdst import kernels
from mdst.graph import generate_graph

BACKENDS = kernels.backends()


def test_dispatch_reports_backend():
    assert kernels.BACKEND in BACKENDS


def _graph_inputs(seed):
    g = generate_graph("random", random.Random(seed).randint(2, 14), (1, 10), seed=seed)
    idx = {u: i for i, u in enumerate(g.sorted_nodes())}
    return g, [(idx[u], idx[v], w) for u, v, w in g.edges()]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_floyd_warshall_line(name):
    k = BACKENDS[name]
    d = k.floyd_warshall(3, [(0, 1, 2), (1, 2, 4)])
    assert [list(r) for r in d] == [[0, 2, 6], [2, 0, 4], [6, 4, 0]]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("seed", range(40))
def test_backends_agree(seed):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    g, edges = _graph_inputs(seed)
    n = g.n
    dp, dc = py.floyd_warshall(n, edges), cy.floyd_warshall(n, edges)
    assert [list(r) for r in dp] == [list(map(int, r)) for r in dc]
    for i, j, w in edges:
        du, dv = list(dp[i]), list(dp[j])
        assert py.edge_scan(du, dv, w) == tuple(cy.edge_scan(du, dv, w))
        for alpha in range(w + 1):
            assert py.boundary_value(du, dv, w, alpha) == cy.boundary_value(du, dv, w, alpha)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_edge_scan_two_nodes(name):
    # weight 2 -> 4 half-units; the midpoint sits at 2 with value 2
    assert tuple(BACKENDS[name].edge_scan([0, 4], [4, 0], 4)) == (2, 2)
