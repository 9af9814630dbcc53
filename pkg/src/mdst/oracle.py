"""Sequential reference computations for the distributed protocol.

Everything here runs on a whole :class:`~mdst.graph.Graph` at once and is
used to check the simulated protocol.  The absolute-center search follows
Hakimi's method: for every edge, the eccentricity of a point at offset
``alpha`` is the upper envelope of ``min(alpha + d(u,z), w - alpha + d(v,z))``
over all nodes ``z``; its minima sit where a descending segment meets the
next ascending one once dominated pairs are dropped.

:func:`brute_force_center` and :func:`enumerate_spanning_trees_min_diameter`
are deliberately naive and share no code with the fast path.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import kernels
from .graph import INF, GeneralNode, Graph, GraphError, dummy, fmt_half, real

CENTER = "center"


class DistMatrix(dict):
    """``(u, v) -> HalfUnit`` shortest-path distances."""

    def row(self, u: int, nodes) -> list[int]:
        return [self[u, z] for z in nodes]


@dataclass(frozen=True)
class CenterResult:
    node: GeneralNode
    value: int

    def key(self) -> tuple:
        return candidate_key(self.value, self.node)


def candidate_key(value: int, node: GeneralNode) -> tuple:
    """Canonical total order on center candidates: ``(value, id1, id2, alpha)``."""
    return (value, node.id1, node.id2, node.alpha)


def apsp_seq(g: Graph) -> DistMatrix:
    """Floyd-Warshall over the whole graph."""
    nodes = g.sorted_nodes()
    index = {u: i for i, u in enumerate(nodes)}
    edges = [(index[u], index[v], w) for u, v, w in g.edges()]
    mat = kernels.floyd_warshall(len(nodes), edges)
    d = DistMatrix()
    for i, u in enumerate(nodes):
        for j, v in enumerate(nodes):
            d[u, v] = mat[i][j]
    return d


def eccentricities(g: Graph, d: DistMatrix):
    """Return ``(ecc, diameter, radius, u_min)``."""
    nodes = g.sorted_nodes()
    ecc = {u: max(d[u, z] for z in nodes) for u in nodes}
    return ecc, max(ecc.values()), min(ecc.values()), nodes[0]


def _edge_rows(g: Graph, d: DistMatrix, u: int, v: int):
    nodes = g.sorted_nodes()
    return [d[u, z] for z in nodes], [d[v, z] for z in nodes]


def upper_boundary_value(g: Graph, d: DistMatrix, e: tuple[int, int], alpha: int) -> int:
    """Eccentricity of the point at offset ``alpha`` from ``e[0]`` on edge ``e``."""
    u, v = e
    w = g.weight(u, v)
    if not 0 <= alpha <= w:
        raise GraphError(f"alpha {alpha} outside [0, {w}]")
    du, dv = _edge_rows(g, d, u, v)
    return kernels.boundary_value(du, dv, w, alpha)


def dominating_pairs(pairs) -> list[tuple[int, int]]:
    """Drop every pair dominated by another and sort by first term, descending.

    ``(d1, d2)`` is dominated by ``(e1, e2)`` when ``d1 <= e1`` and ``d2 <= e2``.
    A sweep over pairs sorted by ``(-d1, -d2)`` keeps exactly the pairs whose
    second term beats every second term seen so far.
    """
    out = []
    best_b = None
    for a, b in sorted(set(pairs), key=lambda p: (-p[0], -p[1])):
        if best_b is None or b > best_b:
            out.append((a, b))
            best_b = b
    return out


def build_dominating_list(g: Graph, d: DistMatrix, e: tuple[int, int]) -> list[tuple[int, int]]:
    u, v = e
    return dominating_pairs((d[u, z], d[v, z]) for z in g.nodes)


def gamma_star(w: int, pairs: list[tuple[int, int]]) -> tuple[int, int]:
    """Lowest local minimum of the upper boundary of one edge.

    ``pairs`` is a dominating list.  Starts from ``alpha = 0`` (value ``a_1``)
    and visits each crossing of consecutive descending/ascending segments;
    a strictly smaller value is required to move, so the smallest alpha wins
    ties.  The far endpoint ``alpha = w`` is not a candidate.
    """
    if not pairs:
        raise ValueError("empty dominating list")
    best = pairs[0][0]
    alpha = 0
    for (_, b_i), (a_next, _) in zip(pairs, pairs[1:]):
        # both numerators are even: every distance is a sum of doubled weights
        x = (w - a_next + b_i) // 2
        y = (w + a_next + b_i) // 2
        if y < best:
            best = y
            alpha = x
    return alpha, best


def center_candidates(g: Graph, d: DistMatrix):
    """Yield ``(key, node)`` for every real node and every edge's best interior point."""
    ecc, _, _, _ = eccentricities(g, d)
    for u in g.sorted_nodes():
        yield candidate_key(ecc[u], real(u)), real(u)
    for u, v, w in g.edges():
        alpha, val = gamma_star(w, build_dominating_list(g, d, (u, v)))
        node = dummy(g, u, v, alpha)
        yield (val, u, v, alpha), node


def absolute_center(g: Graph, d: DistMatrix | None = None) -> CenterResult:
    d = apsp_seq(g) if d is None else d
    key, node = min(center_candidates(g, d), key=lambda kn: kn[0])
    return CenterResult(node, key[0])


def brute_force_center(g: Graph, d: DistMatrix | None = None) -> CenterResult:
    """Exhaustive center search: every segment crossing on every edge, no pruning."""
    d = apsp_seq(g) if d is None else d
    nodes = g.sorted_nodes()
    best = None
    for u in nodes:
        val = max(d[u, z] for z in nodes)
        cand = (candidate_key(val, real(u)), real(u))
        if best is None or cand[0] < best[0]:
            best = cand
    for u, v, w in g.edges():
        du, dv = _edge_rows(g, d, u, v)
        val, alpha = kernels.edge_scan(du, dv, w)
        node = dummy(g, u, v, alpha)
        cand = (candidate_key(val, node) if node.is_real else (val, u, v, alpha), node)
        if cand[0] < best[0]:
            best = cand
    return CenterResult(best[1], best[0][0])


def distances_from(g: Graph, d: DistMatrix, root: GeneralNode) -> dict[int, int]:
    if root.is_real:
        return {v: d[root.id1, v] for v in g.nodes}
    a, b, alpha = root.id1, root.id2, root.alpha
    w = g.weight(a, b)
    return {v: min(alpha + d[a, v], w - alpha + d[b, v]) for v in g.nodes}


@dataclass
class Tree:
    root: GeneralNode
    parent: dict  # node -> parent node id, CENTER, or None for a real root

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for v, p in self.parent.items():
            if p is None or p == CENTER:
                continue
            out.add((min(v, p), max(v, p)))
        if not self.root.is_real:
            attached = [v for v, p in self.parent.items() if p == CENTER]
            if len(attached) == 2:
                out.add((self.root.id1, self.root.id2))
        return out

    def to_json(self) -> str:
        return json.dumps({"root": self.root.describe(),
                           "parent": {str(v): p for v, p in sorted(self.parent.items())}},
                          sort_keys=True)

    def to_dot(self, g: Graph) -> str:
        lines = ["graph mdst {"]
        for v in g.sorted_nodes():
            lines.append(f"  {v};")
        if not self.root.is_real:
            lines.append(f'  center [shape=point, xlabel="{self.root}"];')
        else:
            lines.append(f"  {self.root.id1} [shape=doublecircle];")
        tree_edges = self.edges()
        for u, v, w in g.edges():
            if (u, v) in tree_edges:
                lines.append(f'  {u} -- {v} [label="{fmt_half(w)}", penwidth=2];')
            else:
                lines.append(f'  {u} -- {v} [label="{fmt_half(w)}", style=dotted];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def choose_parent(g: Graph, v: int, dist_to_root: dict[int, int], root: GeneralNode):
    """Smallest-id neighbor on a shortest route toward ``root`` (or ``CENTER``)."""
    if root.is_real and v == root.id1:
        return None
    dv = dist_to_root[v]
    if not root.is_real and v in (root.id1, root.id2):
        half = root.alpha if v == root.id1 else g.weight(root.id1, root.id2) - root.alpha
        if dv == half:
            return CENTER
    for z in sorted(g.neighbors(v)):
        if dist_to_root[z] + g.weight(v, z) == dv:
            return z
    raise GraphError(f"no shortest-path parent for node {v}")


def spt(g: Graph, root: GeneralNode, d: DistMatrix | None = None) -> Tree:
    d = apsp_seq(g) if d is None else d
    dist = distances_from(g, d, root)
    return Tree(root, {v: choose_parent(g, v, dist, root) for v in g.sorted_nodes()})


def _diameter_of_edges(g: Graph, edges) -> int:
    adj: dict[int, list[tuple[int, int]]] = {u: [] for u in g.nodes}
    for u, v in edges:
        w = g.weight(u, v)
        adj[u].append((v, w))
        adj[v].append((u, w))
    best = 0
    for s in g.nodes:
        stack = [(s, None, 0)]
        while stack:
            x, prev, dx = stack.pop()
            if dx > best:
                best = dx
            for y, w in adj[x]:
                if y != prev:
                    stack.append((y, x, dx + w))
    return best


def tree_diameter(t, g: Graph) -> int:
    """Weighted diameter of a spanning tree given as a :class:`Tree` or an edge set."""
    edges = t.edges() if isinstance(t, Tree) else t
    if len(edges) != g.n - 1:
        raise GraphError("edge set does not span the graph")
    return _diameter_of_edges(g, edges)


def mdst_seq(g: Graph, d: DistMatrix | None = None) -> tuple[Tree, CenterResult]:
    d = apsp_seq(g) if d is None else d
    center = absolute_center(g, d)
    return spt(g, center.node, d), center


ENUM_MAX_NODES = 8
ENUM_MAX_EDGES = 14


def enumerate_spanning_trees_min_diameter(g: Graph) -> int:
    """Smallest diameter over all spanning trees, by exhaustive enumeration."""
    if g.n > ENUM_MAX_NODES or g.m > ENUM_MAX_EDGES:
        raise GraphError(f"enumeration limited to n <= {ENUM_MAX_NODES}, m <= {ENUM_MAX_EDGES}")
    if g.n == 1:
        return 0
    pairs = [(u, v) for u, v, _ in g.edges()]
    best = INF
    for subset in itertools.combinations(pairs, g.n - 1):
        parent = {u: u for u in g.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            best = min(best, _diameter_of_edges(g, subset))
    return best
