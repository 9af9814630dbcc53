"""Sequential oracles; worked values are written in half-units."""
import pytest
from hypothesis import given, settings, strategies as st

from conftest import build
from mdst.graph import GraphError, dummy, generate_graph, real
from mdst.oracle import (
    CENTER,
    absolute_center,
    apsp_seq,
    brute_force_center,
    build_dominating_list,
    dominating_pairs,
    eccentricities,
    enumerate_spanning_trees_min_diameter,
    gamma_star,
    mdst_seq,
    spt,
    tree_diameter,
    upper_boundary_value,
)


def test_apsp_small(path3w):
    d = apsp_seq(path3w)
    assert d[1, 3] == 6 and d[3, 1] == 6
    tri = build([(1, 2, 1), (2, 3, 1), (1, 3, 5)])
    assert apsp_seq(tri)[1, 3] == 4
    assert all(d[u, u] == 0 for u in path3w.nodes)


def test_eccentricities(path3w, single, c4):
    ecc, diam, rad, umin = eccentricities(path3w, apsp_seq(path3w))
    assert ecc == {1: 6, 2: 4, 3: 6} and (diam, rad, umin) == (6, 4, 1)
    assert eccentricities(single, apsp_seq(single))[:3] == ({1: 0}, 0, 0)
    ecc, diam, rad, _ = eccentricities(c4, apsp_seq(c4))
    assert set(ecc.values()) == {4} and diam == rad == 4


def test_upper_boundary(k2w2, c4):
    d = apsp_seq(k2w2)
    assert upper_boundary_value(k2w2, d, (1, 2), 0) == 4
    assert upper_boundary_value(k2w2, d, (1, 2), 2) == 2
    assert upper_boundary_value(c4, apsp_seq(c4), (1, 2), 1) == 3
    with pytest.raises(GraphError):
        upper_boundary_value(k2w2, d, (1, 2), 5)


def test_dominating_lists(k2w2, path3, c4):
    assert build_dominating_list(k2w2, apsp_seq(k2w2), (1, 2)) == [(4, 0), (0, 4)]
    assert build_dominating_list(path3, apsp_seq(path3), (1, 2)) == [(4, 2)]
    assert build_dominating_list(c4, apsp_seq(c4), (1, 2)) == [(4, 2), (2, 4)]


def test_gamma_star_worked_examples():
    assert gamma_star(4, [(4, 0), (0, 4)]) == (2, 2)
    assert gamma_star(2, [(4, 2)]) == (0, 4)
    assert gamma_star(2, [(4, 2), (2, 4)]) == (1, 3)
    with pytest.raises(ValueError):
        gamma_star(2, [])


def test_absolute_center_examples(path3, c4, k2w2):
    r = absolute_center(path3)
    assert r.node == real(2) and r.value == 2
    r = absolute_center(c4)
    assert r.node == dummy(c4, 1, 2, 1) and r.value == 3
    r = absolute_center(k2w2)
    assert r.node == dummy(k2w2, 1, 2, 2) and r.value == 2
    assert brute_force_center(path3).key() == absolute_center(path3).key()
    assert brute_force_center(c4).value == 3
    assert brute_force_center(k2w2).value == 2


def test_spt_examples(path3, c4):
    assert spt(path3, real(1)).parent == {1: None, 2: 1, 3: 2}
    t = spt(c4, dummy(c4, 1, 2, 1))
    assert t.edges() == {(1, 2), (1, 4), (2, 3)}
    assert t.parent[1] == CENTER and t.parent[2] == CENTER


def test_tree_diameter_and_mdst(path3w, c4, single, k2):
    assert tree_diameter({(1, 2), (2, 3)}, path3w) == 6
    tree, center = mdst_seq(c4)
    assert tree_diameter(tree, c4) == 6
    assert tree_diameter(mdst_seq(single)[0], single) == 0
    assert mdst_seq(path3w)[0].edges() == {(1, 2), (2, 3)}
    assert mdst_seq(k2)[0].edges() == {(1, 2)}
    with pytest.raises(GraphError):
        tree_diameter({(1, 2)}, path3w)


def test_enumeration(c4, path3w):
    assert enumerate_spanning_trees_min_diameter(c4) == 6
    tri = build([(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    assert enumerate_spanning_trees_min_diameter(tri) == 4
    assert enumerate_spanning_trees_min_diameter(path3w) == 6
    with pytest.raises(GraphError):
        enumerate_spanning_trees_min_diameter(generate_graph("complete", 9))


# -- properties ------------------------------------------------------------------

graphs = st.builds(
    lambda n, s: generate_graph("random", n, (1, 10), seed=s),
    st.integers(1, 10), st.integers(0, 10**6))


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_center_matches_brute_force(g):
    d = apsp_seq(g)
    fast, slow = absolute_center(g, d), brute_force_center(g, d)
    assert fast.key() == slow.key()
    _, diam, rad, _ = eccentricities(g, d)
    assert diam <= 2 * fast.value and fast.value <= rad


@settings(max_examples=100, deadline=None)
@given(graphs)
def test_spt_realizes_distances(g):
    d = apsp_seq(g)
    tree, center = mdst_seq(g, d)
    assert len(tree.edges()) == g.n - 1
    assert tree_diameter(tree, g) <= 2 * center.value


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), min_size=1, max_size=12))
def test_dominating_pairs_is_pareto_front(pairs):
    front = dominating_pairs(pairs)
    assert [a for a, _ in front] == sorted({a for a, _ in front}, reverse=True)
    assert all(b1 < b2 for (_, b1), (_, b2) in zip(front, front[1:]))
    for p in set(pairs):
        dominated = any(q != p and q[0] >= p[0] and q[1] >= p[1] for q in set(pairs))
        assert (p in front) != dominated


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_gamma_star_against_grid(g):
    # the returned point is a true minimum of the boundary, except that the far
    # endpoint is never reported
    d = apsp_seq(g)
    for u, v, w in g.edges():
        alpha, val = gamma_star(w, build_dominating_list(g, d, (u, v)))
        grid = [upper_boundary_value(g, d, (u, v), a) for a in range(w + 1)]
        assert upper_boundary_value(g, d, (u, v), alpha) == val
        assert min(grid) == min(val, grid[-1])
        if val == min(grid):
            assert alpha == grid.index(val)
