"""``mdst`` command line: generate | run | fuzz | scaling."""
from __future__ import annotations

import argparse
import json
import sys

from .graph import FAMILIES, GraphError, generate_graph, parse_graph, serialize_graph
from .harness import cmd_fuzz, cmd_scaling, parse_initiators, run_pipeline
from .sim import trace_to_jsonl


def _range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition("-")
        lo_i = int(lo)
        hi_i = int(hi) if hi else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO-HI, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_i, hi_i


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _sizes(text: str) -> list[int]:
    return [_positive(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdst", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="write a graph in edge-list format")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("n", type=_positive)
    g.add_argument("--weights", type=_range, default=(1, 1), metavar="LO-HI")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", help="output path (default: stdout)")

    r = sub.add_parser("run", help="simulate one graph and compare with the oracle")
    r.add_argument("graph")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--delay", choices=("unit", "random"), default="unit")
    r.add_argument("--initiators", default="all", help='"all" or a comma list of node ids')
    r.add_argument("--dot", metavar="PATH", help="write the tree as Graphviz DOT")
    r.add_argument("--trace", metavar="PATH", help="write the delivery trace as JSON lines")
    r.add_argument("--no-pruning", action="store_true")
    r.add_argument("--json", action="store_true", help="accepted for symmetry; run always emits JSON")

    f = sub.add_parser("fuzz", help="randomized oracle-equivalence campaign")
    f.add_argument("--count", type=_positive, default=200)
    f.add_argument("--n-range", type=_range, default=(2, 12), metavar="LO-HI")
    f.add_argument("--weights", type=_range, default=(1, 10), metavar="LO-HI")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--workers", type=_positive, default=1)
    f.add_argument("--enum", action="store_true", help="also check optimality by enumeration")
    f.add_argument("--json", action="store_true")

    s = sub.add_parser("scaling", help="time and message counts on growing graphs")
    s.add_argument("--family", choices=FAMILIES, default="line")
    s.add_argument("--sizes", type=_sizes, default=[8, 16, 32, 64])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delay", choices=("unit",), default="unit")
    s.add_argument("--json", action="store_true")
    return p


def _do_generate(a) -> int:
    text = serialize_graph(generate_graph(a.family, a.n, a.weights, a.seed))
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _do_run(a) -> int:
    with open(a.graph) as fh:
        g = parse_graph(fh.read())
    inits = parse_initiators(a.initiators, g)
    rep = run_pipeline(g, a.seed, a.delay, inits, pruning=not a.no_pruning,
                       keep_trace=bool(a.trace))
    print(rep.to_json())
    if a.dot and rep.tree is not None:
        with open(a.dot, "w") as fh:
            fh.write(rep.tree.to_dot(g))
    if a.trace and rep.trace is not None:
        with open(a.trace, "w") as fh:
            fh.write(trace_to_jsonl(rep.trace))
    return 0 if rep.passed else 1


def _do_fuzz(a) -> int:
    out = cmd_fuzz(a.count, a.n_range, a.weights, a.seed, a.workers, a.enum)
    if a.json:
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(f"{out['passed']}/{out['count']} passed (rate {out['pass_rate']:.3f})")
        for c in out["failures"]:
            print(f"  seed {c['seed']} n={c['n']} m={c['m']}: {c['reason']}")
    return 0 if out["pass_rate"] == 1.0 else 1


def _do_scaling(a) -> int:
    rows = cmd_scaling(a.family, a.sizes, a.seed)
    if a.json:
        print(json.dumps([{k: (str(v) if k in ("finish_time", "time_per_n", "update_ratio") else v)
                           for k, v in r.items()} for r in rows], indent=2))
    else:
        print(f"{'n':>5} {'m':>6} {'time':>8} {'updates':>8} {'inactive':>8} {'bits':>10}"
              f" {'time/n':>7} {'upd/2nm':>7}")
        for r in rows:
            print(f"{r['n']:>5} {r['m']:>6} {str(r['finish_time']):>8} {r['update_count']:>8}"
                  f" {r['inactive_count']:>8} {r['bits_total']:>10}"
                  f" {float(r['time_per_n']):>7.3f} {float(r['update_ratio']):>7.3f}")
    ok = all(r["inactive_count"] == 2 * r["m"] and r["update_ratio"] <= 1 for r in rows)
    return 0 if ok else 1


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return {"generate": _do_generate, "run": _do_run, "fuzz": _do_fuzz,
                "scaling": _do_scaling}[a.cmd](a)
    except (OSError, GraphError) as exc:
        print(f"mdst: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
