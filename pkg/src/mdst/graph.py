"""Graph representation, exact half-unit arithmetic and edge-list I/O.

All scalar quantities (edge weights, distances, offsets inside an edge,
eccentricities) are plain ``int`` values counting *half* weight units.  A
weight of ``w`` is stored as ``2 * w``; the only halving that ever occurs
(the intersection of two boundary segments) then stays integral.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NewType, Union

HalfUnit = NewType("HalfUnit", int)
NodeId = int

INF = float("inf")


def to_half(w: int) -> int:
    return 2 * w


def from_half(h: int) -> Union[int, Fraction]:
    """Convert half-units back to weight units (``int`` when exact)."""
    if h % 2 == 0:
        return h // 2
    return Fraction(h, 2)


def fmt_half(h) -> str:
    if h == INF:
        return "inf"
    if h % 2 == 0:
        return str(h // 2)
    return f"{h // 2}.5" if h >= 0 else f"-{(-h) // 2}.5"


class GraphError(ValueError):
    """Raised for malformed or invalid graph input."""


@dataclass(frozen=True)
class Graph:
    """Undirected, connected graph with strictly positive half-unit weights."""

    nodes: frozenset
    weights: dict = field(compare=True)  # (u, v) with u < v -> HalfUnit

    def __post_init__(self):
        adj: dict[int, dict[int, int]] = {u: {} for u in self.nodes}
        for (u, v), w in self.weights.items():
            adj[u][v] = w
            adj[v][u] = w
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def from_edges(cls, nodes: Iterable[int], edges: Iterable[tuple[int, int, int]],
                   half_units: bool = False) -> "Graph":
        """Build and validate a graph; weights are in weight units unless ``half_units``."""
        node_list = list(nodes)
        node_set = frozenset(node_list)
        if len(node_set) != len(node_list):
            raise GraphError("duplicate node id")
        for u in node_set:
            if not isinstance(u, int) or u < 0:
                raise GraphError(f"node id must be a non-negative integer: {u!r}")
        weights: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            if u not in node_set or v not in node_set:
                raise GraphError(f"edge ({u},{v}) references an unknown node")
            if w <= 0:
                raise GraphError(f"non-positive weight {w} on edge ({u},{v})")
            key = (min(u, v), max(u, v))
            if key in weights:
                raise GraphError(f"duplicate edge {key}")
            weights[key] = w if half_units else to_half(w)
        g = cls(node_set, weights)
        if not g.is_connected():
            raise GraphError("graph is disconnected")
        return g

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.weights)

    def neighbors(self, u: int) -> dict[int, int]:
        return self._adj[u]

    def weight(self, u: int, v: int) -> int:
        return self._adj[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> list[tuple[int, int, int]]:
        """Canonical edge list ``(u, v, w)`` with ``u < v``, sorted."""
        return [(u, v, w) for (u, v), w in sorted(self.weights.items())]

    def sorted_nodes(self) -> list[int]:
        return sorted(self.nodes)

    def max_weight(self) -> int:
        """Largest edge weight in weight units (0 for an edgeless graph)."""
        return max(self.weights.values(), default=0) // 2

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        start = next(iter(self.nodes))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in self._adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(self.nodes)


@dataclass(frozen=True, order=True)
class GeneralNode:
    """A real vertex (``id1 == id2``, ``alpha == 0``) or a point inside edge ``(id1, id2)``.

    ``alpha`` is the half-unit distance from ``id1``.  Use :func:`real` and
    :func:`dummy` rather than the constructor; ``dummy`` collapses endpoints.
    """

    id1: int
    id2: int
    alpha: int = 0

    @property
    def is_real(self) -> bool:
        return self.id1 == self.id2

    def describe(self) -> dict:
        if self.is_real:
            return {"kind": "real", "id": self.id1}
        return {"kind": "dummy", "id1": self.id1, "id2": self.id2,
                "alpha": fmt_half(self.alpha)}

    def __str__(self) -> str:
        if self.is_real:
            return f"Real({self.id1})"
        return f"Dummy({self.id1},{self.id2},{fmt_half(self.alpha)})"


def real(u: int) -> GeneralNode:
    return GeneralNode(u, u, 0)


def dummy(g: Graph, a: int, b: int, alpha: int) -> GeneralNode:
    """Point at half-unit offset ``alpha`` from ``a`` on edge ``(a, b)``."""
    if not g.has_edge(a, b):
        raise GraphError(f"({a},{b}) is not an edge")
    w = g.weight(a, b)
    if not 0 <= alpha <= w:
        raise GraphError(f"offset {alpha} outside edge ({a},{b}) of weight {w}")
    if a > b:
        a, b, alpha = b, a, w - alpha
    if alpha == 0:
        return real(a)
    if alpha == w:
        return real(b)
    return GeneralNode(a, b, alpha)


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` / ``u v w`` edge-list format.

    Node ids are taken from the edges; nodes that appear in no edge are only
    legal for the single-node graph, which is written as ``1 0`` (node 1) or
    ``1 0`` followed by one line holding the node id.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty document")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphError(f"malformed header line: {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphError(f"malformed header line: {lines[0]!r}") from None
    if n < 1 or m < 0:
        raise GraphError(f"invalid counts n={n} m={m}")
    body = lines[1:]
    edges = []
    if m == 0:
        if n != 1:
            raise GraphError("graph is disconnected")
        if len(body) > 1:
            raise GraphError("unexpected lines after header")
        node = 1
        if body:
            try:
                node = int(body[0])
            except ValueError:
                raise GraphError(f"malformed node line: {body[0]!r}") from None
        return Graph.from_edges([node], [])
    if len(body) != m:
        raise GraphError(f"expected {m} edge lines, found {len(body)}")
    for ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphError(f"malformed edge line: {ln!r}")
        try:
            u, v, w = (int(p) for p in parts)
        except ValueError:
            raise GraphError(f"malformed edge line: {ln!r}") from None
        edges.append((u, v, w))
    nodes = sorted({x for u, v, _ in edges for x in (u, v)})
    if len(nodes) != n:
        raise GraphError(f"header declares {n} nodes, edges mention {len(nodes)}")
    return Graph.from_edges(nodes, edges)


def serialize_graph(g: Graph) -> str:
    if g.m == 0:
        (node,) = g.nodes
        return "1 0\n" if node == 1 else f"1 0\n{node}\n"
    out = [f"{g.n} {g.m}"]
    for u, v, w in g.edges():
        out.append(f"{u} {v} {w // 2}")
    return "\n".join(out) + "\n"


FAMILIES = ("line", "ring", "complete", "random")


def generate_graph(family: str, n: int, weight_range: tuple[int, int] = (1, 1),
                   seed: int = 0, max_edges: int | None = None) -> Graph:
    """Deterministic test-corpus graph on nodes ``1..n``.

    ``random`` builds a random spanning tree and adds up to ``n`` extra edges
    (capped by ``max_edges``), so it is connected by construction.
    """
    if n < 1:
        raise GraphError("n must be at least 1")
    lo, hi = weight_range
    if lo < 1 or hi < lo:
        raise GraphError(f"invalid weight range {weight_range}")
    rng = random.Random(seed)
    nodes = list(range(1, n + 1))

    def w() -> int:
        return rng.randint(lo, hi)

    pairs: list[tuple[int, int]]
    if family == "line":
        pairs = [(i, i + 1) for i in range(1, n)]
    elif family == "ring":
        pairs = [(i, i + 1) for i in range(1, n)]
        if n >= 3:
            pairs.append((1, n))
    elif family == "complete":
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    elif family == "random":
        pairs = []
        order = nodes[:]
        rng.shuffle(order)
        for i in range(1, n):
            j = rng.randrange(i)
            a, b = order[i], order[j]
            pairs.append((min(a, b), max(a, b)))
        all_pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        present = set(pairs)
        spare = [p for p in all_pairs if p not in present]
        extra = rng.randint(0, min(len(spare), n))
        if max_edges is not None:
            extra = max(0, min(extra, max_edges - len(pairs)))
        pairs.extend(rng.sample(spare, extra))
        pairs.sort()
    else:
        raise GraphError(f"unknown family {family!r}")
    return Graph.from_edges(nodes, [(a, b, w()) for a, b in pairs])
