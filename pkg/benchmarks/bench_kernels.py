"""Compare the compiled and pure-Python kernels on random graphs.

    python3 benchmarks/bench_kernels.py [--sizes 16,32,64] [--repeat 3]
"""
from __future__ import annotations

import argparse
import timeit

from mdst.graph import generate_graph
from mdst.kernels import backends


def _inputs(n: int):
    g = generate_graph("random", n, (1, 10), seed=n)
    nodes = g.sorted_nodes()
    idx = {u: i for i, u in enumerate(nodes)}
    edges = [(idx[u], idx[v], w) for u, v, w in g.edges()]
    return g, edges


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16,32,64,128")
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    impls = backends()
    if "cython" not in impls:
        print("compiled kernels unavailable; only the Python backend will be timed")
    print(f"{'kernel':<16}{'n':>6}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for n in (int(x) for x in a.sizes.split(",")):
        g, edges = _inputs(n)
        dist = impls["python"].floyd_warshall(n, edges)
        u, v, w = edges[0]
        cases = {
            "floyd_warshall": lambda k: k.floyd_warshall(n, edges),
            "edge_scan": lambda k: k.edge_scan(list(dist[u]), list(dist[v]), w),
        }
        for label, fn in cases.items():
            times = {name: min(timeit.repeat(lambda: fn(k), number=1, repeat=a.repeat))
                     for name, k in impls.items()}
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{label:<16}{n:>6}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
                  + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
