"""End-to-end pipeline: simulate, compare with the oracles, audit the counts."""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

from .graph import GeneralNode, Graph, GraphError, dummy, from_half, generate_graph, real
from .oracle import (
    CENTER,
    Tree,
    apsp_seq,
    brute_force_center,
    eccentricities,
    enumerate_spanning_trees_min_diameter,
    mdst_seq,
    tree_diameter,
    ENUM_MAX_EDGES,
    ENUM_MAX_NODES,
)
from .protocol import MdstProcess
from .sim import DelayModel, SimulationError, run

FUZZ_MAX_EDGES = 30


def _num(h):
    """Half-units to a JSON number in weight units."""
    v = from_half(h)
    return float(v) if isinstance(v, Fraction) else v


def parse_initiators(text: str, g: Graph) -> list[int]:
    if text is None or text.strip() == "all":
        return g.sorted_nodes()
    try:
        ids = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise GraphError(f"bad initiator list {text!r}") from None
    if not ids:
        raise GraphError("empty initiator list")
    missing = [u for u in ids if u not in g.nodes]
    if missing:
        raise GraphError(f"initiators not in graph: {missing}")
    return ids


@dataclass
class RunReport:
    graph: dict
    oracle: dict
    distributed: dict | None
    metrics: dict | None
    verdict: str
    tree: Tree | None = field(default=None, repr=False)
    trace: list | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        return {"graph": self.graph, "oracle": self.oracle, "distributed": self.distributed,
                "metrics": self.metrics, "verdict": self.verdict}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _center_from_phi(g: Graph, phi) -> GeneralNode:
    if phi.id1 == phi.id2:
        return real(phi.id1)
    return dummy(g, phi.id1, phi.id2, phi.alpha_best)


def run_pipeline(g: Graph, seed: int = 0, delay: str = "unit", initiators=None,
                 pruning: bool = True, keep_trace: bool = False) -> RunReport:
    inits = g.sorted_nodes() if initiators is None else sorted(initiators)
    d = apsp_seq(g)
    _, diam, radius, _ = eccentricities(g, d)
    otree, ocenter = mdst_seq(g, d)
    brute = brute_force_center(g, d)
    oedges = sorted(otree.edges())
    summary = {"n": g.n, "m": g.m, "max_weight": g.max_weight(), "initiators": inits,
               "delay": delay, "seed": seed}
    oracle = {
        "center": ocenter.node.describe(),
        "center_key_half": list(ocenter.key()),
        "R_star": _num(ocenter.value),
        "brute_force_key_half": list(brute.key()),
        "diameter": _num(diam),
        "radius": _num(radius),
        "mdst_diameter": _num(tree_diameter(otree, g)),
        "tree_edges": oedges,
    }
    factory = partial(MdstProcess, pruning=pruning)
    try:
        res = run(g, factory, inits, DelayModel(delay, seed))
    except SimulationError as exc:
        return RunReport(summary, oracle, None, None, f"FAIL(simulation: {exc})")

    states, metrics = res.states, res.metrics
    centers = {p.center for p in states.values()}
    if len(centers) != 1 or None in centers:
        return RunReport(summary, oracle, None, metrics.to_dict(),
                         "FAIL(nodes disagree on the center)")
    (phi,) = centers
    center = _center_from_phi(g, phi)
    tree = Tree(center, {u: p.parent_in_mdst for u, p in states.items()})
    dedges = sorted(tree.edges())
    dist = {
        "center": center.describe(),
        "center_key_half": list(phi.key()),
        "R_star": _num(phi.upbound),
        "tree_edges": dedges,
        "tree_diameter": _num(tree_diameter(tree, g)) if len(dedges) == g.n - 1 else None,
        "nodes": {str(u): _node_json(p) for u, p in sorted(states.items())},
    }
    reasons = []
    if tuple(phi.key()) != ocenter.key():
        reasons.append("center differs from oracle")
    if phi.upbound != ocenter.value:
        reasons.append("R* differs from oracle")
    if dedges != oedges:
        reasons.append("tree edges differ from oracle")
    if metrics.count("Inactive") != 2 * g.m:
        reasons.append(f"#Inactive={metrics.count('Inactive')} != 2m={2 * g.m}")
    if metrics.count("Update") > 2 * g.n * g.m:
        reasons.append(f"#Update={metrics.count('Update')} > 2nm={2 * g.n * g.m}")
    verdict = "PASS" if not reasons else "FAIL(" + "; ".join(reasons) + ")"
    return RunReport(summary, oracle, dist, metrics.to_dict(), verdict, tree,
                     res.trace if keep_trace else None)


def _node_json(p: MdstProcess) -> dict:
    r = p.report()
    parent = r["parent_in_mdst"]
    return {
        "u_min": r["u_min"],
        "diam": _num(r["diam"]),
        "radius": _num(r["radius"]),
        "phi_star": None if p.center is None else [_num(p.center.alpha_best), _num(p.center.upbound),
                                                   p.center.id1, p.center.id2],
        "parent_in_mdst": parent if parent != CENTER else CENTER,
        "d_to_center": _num(r["d_to_center"]),
    }


# -- campaigns ----------------------------------------------------------------

def fuzz_case(seed: int, n_range=(2, 12), weight_range=(1, 10), enum_check: bool = False) -> dict:
    """One randomized instance; its outcome depends on ``seed`` alone."""
    rng = random.Random(f"fuzz/{seed}")
    n = rng.randint(*n_range)
    g = generate_graph("random", n, weight_range, seed=seed, max_edges=FUZZ_MAX_EDGES)
    inits = sorted(rng.sample(g.sorted_nodes(), rng.randint(1, n)))
    rep = run_pipeline(g, seed=seed, delay="random", initiators=inits)
    reasons = [] if rep.passed else [rep.verdict]
    if rep.passed:
        if rep.oracle["brute_force_key_half"] != rep.oracle["center_key_half"]:
            reasons.append("brute-force center differs")
        solo = run_pipeline(g, seed=seed + 1, delay="random", initiators=[inits[0]])
        if not solo.passed or solo.distributed["center_key_half"] != rep.distributed["center_key_half"]:
            reasons.append("single-initiator run disagrees")
        if enum_check and g.n <= ENUM_MAX_NODES and g.m <= ENUM_MAX_EDGES:
            best = enumerate_spanning_trees_min_diameter(g)
            if tree_diameter(rep.tree, g) != best:
                reasons.append("tree diameter is not minimal")
    return {"seed": seed, "n": g.n, "m": g.m, "initiators": inits,
            "ok": not reasons, "reason": "; ".join(reasons) or None}


def cmd_fuzz(count: int, n_range=(2, 12), weight_range=(1, 10), seed: int = 0,
             workers: int = 1, enum_check: bool = False) -> dict:
    seeds = range(seed, seed + count)
    job = partial(fuzz_case, n_range=n_range, weight_range=weight_range, enum_check=enum_check)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            cases = list(pool.map(job, seeds))
    else:
        cases = [job(s) for s in seeds]
    failures = [c for c in cases if not c["ok"]]
    return {
        "count": count,
        "passed": count - len(failures),
        "pass_rate": (count - len(failures)) / count if count else 1.0,
        "first_failing_seed": failures[0]["seed"] if failures else None,
        "failures": failures,
    }


def cmd_scaling(family: str, sizes, seed: int = 0, weight_range=(1, 1)) -> list[dict]:
    """Unit-delay runs started by every node; one row per size."""
    rows = []
    for n in sizes:
        g = generate_graph(family, n, weight_range, seed=seed)
        res = run(g, MdstProcess, g.sorted_nodes(), DelayModel("unit"))
        m = res.metrics
        upd = m.count("Update")
        rows.append({
            "n": g.n, "m": g.m,
            "finish_time": m.finish_time,
            "update_count": upd,
            "inactive_count": m.count("Inactive"),
            "bits_total": m.bits_total,
            "time_per_n": m.finish_time / g.n,
            "update_ratio": Fraction(upd, 2 * g.n * g.m) if g.m else Fraction(0),
        })
    return rows
