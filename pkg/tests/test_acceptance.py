"""Acceptance suite: one printed PASS/FAIL line per criterion.

Every comparison is exact on half-unit integers unless a tolerance is named
below.  Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines
inline; they are printed regardless of capture.
"""
import random
import time
from collections import defaultdict
from fractions import Fraction
from functools import partial

import pytest

from mdst.graph import Graph, generate_graph
from mdst.harness import run_pipeline
from mdst.oracle import (
    absolute_center,
    apsp_seq,
    brute_force_center,
    build_dominating_list,
    eccentricities,
    enumerate_spanning_trees_min_diameter,
    gamma_star,
    mdst_seq,
    tree_diameter,
    upper_boundary_value,
)
from mdst.protocol import MdstProcess
from mdst.protocol.messages import APSP_KINDS
from mdst.sim import DEFAULT_BUDGET, DelayModel, run, trace_to_jsonl

# pinned bounds and tolerances
ORACLE_GRAPHS = 200
ORACLE_SECONDS = 60.0
ENUM_GRAPHS = 50
ENUM_SECONDS = 30.0
LINE_SIZES = (8, 16, 32, 64)
TIME_RATIO_BOUND = 8
SLOPE_REL_TOL = Fraction(5, 100)   # linearity: incremental slopes agree within 5%
GRID_GRAPHS = 100
DETERMINISM_GRAPHS = 30


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")


def _corpus() -> list[tuple[str, Graph, list[int], int]]:
    """Fixed graph corpus with initiator sets and delay seeds."""
    out = []
    for fam in ("line", "ring", "complete"):
        for n in range(1, 11):
            g = generate_graph(fam, n, (1, 10), seed=n)
            out.append((f"{fam}-{n}", g, [1], n))
    for s in range(80):
        rng = random.Random(f"corpus/{s}")
        g = generate_graph("random", rng.randint(2, 14), (1, 10), seed=1000 + s)
        inits = sorted(rng.sample(g.sorted_nodes(), rng.randint(1, g.n)))
        out.append((f"random-{s}", g, inits, s))
    return out


@pytest.fixture(scope="module")
def corpus_runs():
    runs = []
    for name, g, inits, seed in _corpus():
        res = run(g, MdstProcess, inits, DelayModel("random", seed), budget=DEFAULT_BUDGET)
        runs.append((name, g, inits, seed, res))
    return runs


def test_criterion_1_oracle_equivalence(capsys):
    start = time.perf_counter()
    bad = []
    for s in range(ORACLE_GRAPHS):
        rng = random.Random(f"accept1/{s}")
        n = rng.randint(2, 12)
        g = generate_graph("random", n, (1, 10), seed=s, max_edges=30)
        inits = sorted(rng.sample(g.sorted_nodes(), rng.randint(1, n)))
        rep = run_pipeline(g, seed=s, delay="random", initiators=inits)
        d = apsp_seq(g)
        tree, center = mdst_seq(g, d)
        brute = brute_force_center(g, d)
        ok = (rep.distributed is not None
              and tuple(rep.distributed["center_key_half"]) == center.key() == brute.key()
              and absolute_center(g, d).key() == center.key()
              and rep.tree.edges() == tree.edges())
        if not ok:
            bad.append(s)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < ORACLE_SECONDS
    report(capsys, 1, ok, f"{ORACLE_GRAPHS - len(bad)}/{ORACLE_GRAPHS} graphs agree with both "
                          f"oracles exactly; {elapsed:.1f}s (limit {ORACLE_SECONDS:.0f}s)")
    assert not bad, f"failing seeds {bad[:10]}"
    assert elapsed < ORACLE_SECONDS


def test_criterion_2_spanning_tree_optimality(capsys):
    start = time.perf_counter()
    bad = []
    for s in range(ENUM_GRAPHS):
        rng = random.Random(f"accept2/{s}")
        g = generate_graph("random", rng.randint(2, 7), (1, 10), seed=s, max_edges=12)
        assert g.n <= 7 and g.m <= 12
        rep = run_pipeline(g, seed=s, delay="random",
                           initiators=[rng.choice(g.sorted_nodes())])
        if tree_diameter(rep.tree, g) != enumerate_spanning_trees_min_diameter(g):
            bad.append(s)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < ENUM_SECONDS
    report(capsys, 2, ok, f"{ENUM_GRAPHS - len(bad)}/{ENUM_GRAPHS} trees have minimum diameter "
                          f"by enumeration; {elapsed:.1f}s (limit {ENUM_SECONDS:.0f}s)")
    assert not bad and elapsed < ENUM_SECONDS


def test_criterion_3_apsp_correctness(capsys, corpus_runs):
    bad = []
    for name, g, _, _, res in corpus_runs:
        d = apsp_seq(g)
        for u, p in res.states.items():
            rows_ok = p.dist == {z: d[u, z] for z in g.nodes} and all(
                row == {z: d[v, z] for z in g.nodes} for v, row in p.neighbor_dist.items())
            if not rows_ok:
                bad.append((name, u))
    report(capsys, 3, not bad, f"own and neighbor rows equal Floyd-Warshall at every node of "
                               f"{len(corpus_runs)} corpus graphs ({len(bad)} mismatches)")
    assert not bad


def test_criterion_4_message_bounds(capsys, corpus_runs):
    bad = []
    worst = Fraction(0)
    for name, g, _, _, res in corpus_runs:
        m = res.metrics
        n2m = 2 * g.n * g.m
        if g.m:
            worst = max(worst, Fraction(m.count("Update"), n2m))
        if (m.count("Inactive") != 2 * g.m or m.count("Update") > n2m
                or m.count("PhiUp") + m.count("PhiDown") != 2 * (g.n - 1)):
            bad.append(name)
    report(capsys, 4, not bad, f"#Inactive = 2m, #Update <= 2nm (max ratio {float(worst):.3f}), "
                               f"PhiUp + PhiDown = 2(n-1) on {len(corpus_runs)} runs")
    assert not bad


def _line_times():
    out = {}
    for n in LINE_SIZES:
        g = generate_graph("line", n)
        out[n] = run(g, MdstProcess, g.sorted_nodes(), DelayModel("unit")).metrics.finish_time
    return out


def test_criterion_5_time_bound(capsys):
    t = _line_times()
    ratios = {n: t[n] / n for n in LINE_SIZES}
    bounded = all(r <= TIME_RATIO_BOUND for r in ratios.values())
    slopes = [(t[b] - t[a]) / (b - a) for a, b in zip(LINE_SIZES, LINE_SIZES[1:])]
    linear = max(slopes) - min(slopes) <= SLOPE_REL_TOL * min(slopes)
    tail = [n for n in LINE_SIZES if n >= 16]
    strict = all(ratios[b] <= ratios[a] for a, b in zip(tail, tail[1:]))
    shown = ", ".join(f"n={n}: {float(r):.3f}" for n, r in ratios.items())
    report(capsys, 5, bounded and linear,
           f"finish_time/n {shown}; bound {TIME_RATIO_BOUND} holds; incremental slopes "
           f"{[str(s) for s in slopes]} agree within {float(SLOPE_REL_TOL):.0%}; "
           f"strict non-increase beyond n=16 {'holds' if strict else 'does not hold'}")
    assert bounded and linear


@pytest.mark.xfail(strict=True, reason="finish time is a(n-1)+b with b < a, so T/n rises toward a")
def test_criterion_5_strict_ratio_monotonicity():
    t = _line_times()
    tail = [n for n in LINE_SIZES if n >= 16]
    assert all(t[b] / b <= t[a] / a for a, b in zip(tail, tail[1:]))


def test_criterion_6_termination_discipline(capsys, corpus_runs):
    bad = []
    for name, g, _, _, res in corpus_runs:
        per_channel = defaultdict(list)
        for env in res.trace:
            if env.kind in APSP_KINDS:
                per_channel[env.src, env.dst].append(env.kind)
        if len(per_channel) != 2 * g.m or len(res.trace) >= DEFAULT_BUDGET:
            bad.append(name)
        elif any(k.count("Inactive") != 1 or k[-1] != "Inactive" for k in per_channel.values()):
            bad.append(name)
    report(capsys, 6, not bad, f"one Inactive per ordered channel, always the last shortest-path "
                               f"message; {len(corpus_runs)} runs quiescent within "
                               f"{DEFAULT_BUDGET:.0e} deliveries")
    assert not bad


def test_criterion_7_determinism(capsys):
    bad = []
    for s in range(DETERMINISM_GRAPHS):
        rng = random.Random(f"accept7/{s}")
        g = generate_graph("random", rng.randint(2, 12), (1, 10), seed=s)
        inits = sorted(rng.sample(g.sorted_nodes(), rng.randint(1, g.n)))
        a = run(g, MdstProcess, inits, DelayModel("random", s))
        b = run(g, MdstProcess, inits, DelayModel("random", s))
        ra = run_pipeline(g, s, "random", inits)
        rb = run_pipeline(g, s, "random", inits)
        other = run_pipeline(g, s + 7919, "random", inits)
        same = (trace_to_jsonl(a.trace) == trace_to_jsonl(b.trace)
                and ra.to_json() == rb.to_json()
                and other.distributed["center_key_half"] == ra.distributed["center_key_half"]
                and other.distributed["tree_edges"] == ra.distributed["tree_edges"])
        if not same:
            bad.append(s)
    report(capsys, 7, not bad, f"{DETERMINISM_GRAPHS - len(bad)}/{DETERMINISM_GRAPHS} graphs: "
                               f"byte-identical traces and reports per seed, same center and tree "
                               f"across seeds")
    assert not bad


def test_criterion_8_gamma_star(capsys):
    # worked examples, converted to half-units
    examples = [
        (gamma_star(4, [(4, 0), (0, 4)]), (2, 2)),
        (gamma_star(2, [(4, 2)]), (0, 4)),
        (gamma_star(2, [(4, 2), (2, 4)]), (1, 3)),
    ]
    ex_ok = all(got == want for got, want in examples)
    bad_edges = 0
    edges = 0
    for s in range(GRID_GRAPHS):
        g = generate_graph("random", random.Random(f"accept8/{s}").randint(2, 12), (1, 10), seed=s)
        d = apsp_seq(g)
        for u, v, w in g.edges():
            edges += 1
            alpha, val = gamma_star(w, build_dominating_list(g, d, (u, v)))
            grid = [upper_boundary_value(g, d, (u, v), a) for a in range(w + 1)]
            if not (grid[alpha] == val and min(grid) == min(val, grid[-1])):
                bad_edges += 1
    ok = ex_ok and bad_edges == 0
    report(capsys, 8, ok, f"worked examples {'match' if ex_ok else 'differ'}; gamma_star agrees "
                          f"with the half-unit grid on {edges - bad_edges}/{edges} edges of "
                          f"{GRID_GRAPHS} graphs")
    assert ok


def test_criterion_9_center_bounds(capsys, corpus_runs):
    bad = []
    for name, g, inits, seed, res in corpus_runs:
        _, diam, rad, _ = eccentricities(g, apsp_seq(g))
        r_star = next(iter(res.states.values())).center.upbound
        if not diam <= 2 * r_star <= 2 * rad:
            bad.append(name)
        off = run(g, partial(MdstProcess, pruning=False), inits, DelayModel("random", seed))
        if any(off.states[u].center != p.center or off.states[u].parent_in_mdst != p.parent_in_mdst
               for u, p in res.states.items()):
            bad.append(name)
    report(capsys, 9, not bad, f"Diam/2 <= R* <= Radius and pruning on/off agree on "
                               f"{len(corpus_runs)} runs")
    assert not bad
