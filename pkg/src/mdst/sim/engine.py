"""Discrete-event executor for an asynchronous network with FIFO channels.

Virtual time is an exact :class:`~fractions.Fraction`.  Every message is
delivered within one time unit of being sent, and never overtakes an earlier
message on the same ordered channel.  Simultaneous deliveries are ordered by
``(deliver_time, dst, src, channel sequence)`` so a run is fully determined
by the graph, the initiator set and the delay seed.

A protocol is any factory ``(node_id, {neighbor: weight}) -> process`` whose
process exposes ``on_start()`` and ``on_message(src, msg)``; both return the
list of ``(dst, msg)`` emissions.
"""
from __future__ import annotations

import hashlib
import heapq
import json
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from ..graph import Graph

DEFAULT_BUDGET = 10**7
TAG_BITS = 8
DELAY_GRAIN = 1000


class SimulationError(RuntimeError):
    """A run could not complete; ``position`` is the index of the failing delivery."""

    def __init__(self, message: str, position: int | None = None, envelope=None):
        super().__init__(message if position is None else f"{message} (delivery #{position})")
        self.position = position
        self.envelope = envelope


class ReplayDivergence(SimulationError):
    pass


@dataclass(frozen=True)
class Envelope:
    src: int
    dst: int
    payload: object
    send_time: Fraction
    deliver_time: Fraction
    seq: int

    @property
    def kind(self) -> str:
        return self.payload.kind

    def to_json(self) -> dict:
        return {
            "time": str(self.deliver_time),
            "sent": str(self.send_time),
            "src": self.src,
            "dst": self.dst,
            "seq": self.seq,
            "kind": self.kind,
            "digest": payload_digest(self.payload),
        }


def payload_digest(msg) -> str:
    blob = json.dumps([msg.kind, msg.payload()], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def account_bits(msg, n: int, max_weight: int) -> int:
    """Size charged to one message.

    One tag byte, ``ceil(log2(n+1))`` bits per node-id field,
    ``ceil(log2(2nW+1))`` bits per distance field (``W`` in weight units)
    and one bit per flag.
    """
    id_bits = _ceil_log2(n + 1)
    dist_bits = _ceil_log2(2 * n * max_weight + 1)
    return TAG_BITS + msg.ID_FIELDS * id_bits + msg.DIST_FIELDS * dist_bits + msg.FLAG_FIELDS


@dataclass
class Metrics:
    messages_total: int = 0
    messages_by_kind: Counter = field(default_factory=Counter)
    bits_total: int = 0
    finish_time: Fraction = Fraction(0)
    per_node_state_size: dict = field(default_factory=dict)

    def record(self, env: Envelope, bits: int) -> None:
        self.messages_total += 1
        self.messages_by_kind[env.kind] += 1
        self.bits_total += bits
        if env.deliver_time > self.finish_time:
            self.finish_time = env.deliver_time

    def count(self, kind: str) -> int:
        return self.messages_by_kind.get(kind, 0)

    def to_dict(self) -> dict:
        return {
            "messages_total": self.messages_total,
            "messages_by_kind": dict(sorted(self.messages_by_kind.items())),
            "bits_total": self.bits_total,
            "finish_time": str(self.finish_time),
            "per_node_state_size": {str(k): v for k, v in sorted(self.per_node_state_size.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class DelayModel:
    """``unit``: every delay is exactly 1.  ``random``: seeded per channel, in (0, 1]."""

    MODES = ("unit", "random")

    def __init__(self, mode: str = "unit", seed: int = 0):
        if mode not in self.MODES:
            raise ValueError(f"unknown delay mode {mode!r}")
        self.mode = mode
        self.seed = seed
        self._rng: dict[tuple[int, int], random.Random] = {}
        self._last: dict[tuple[int, int], Fraction] = {}

    def deliver_time(self, src: int, dst: int, send_time: Fraction) -> Fraction:
        if self.mode == "unit":
            t = send_time + 1
        else:
            ch = (src, dst)
            rng = self._rng.get(ch)
            if rng is None:
                rng = self._rng[ch] = random.Random(f"{self.seed}/{src}/{dst}")
            lo = max(send_time, self._last.get(ch, send_time))
            slack = send_time + 1 - lo
            t = lo + Fraction(rng.randint(1, DELAY_GRAIN), DELAY_GRAIN) * slack
            self._last[ch] = t
        return t

    def fresh(self) -> "DelayModel":
        return DelayModel(self.mode, self.seed)


class RunResult(NamedTuple):
    states: dict
    metrics: Metrics
    trace: list


def _build(g: Graph, factory: Callable, initiators: Iterable[int]):
    inits = sorted(set(initiators))
    if not inits:
        raise ValueError("at least one initiator is required")
    unknown = [u for u in inits if u not in g.nodes]
    if unknown:
        raise ValueError(f"initiators not in graph: {unknown}")
    procs = {u: factory(u, dict(g.neighbors(u))) for u in g.sorted_nodes()}
    return procs, inits


def run(g: Graph, factory: Callable, initiators: Iterable[int],
        delay: DelayModel | None = None, budget: int = DEFAULT_BUDGET) -> RunResult:
    delay = DelayModel() if delay is None else delay.fresh()
    procs, inits = _build(g, factory, initiators)
    n, wmax = g.n, g.max_weight()
    metrics = Metrics()
    trace: list[Envelope] = []
    heap: list = []
    seqs: Counter = Counter()

    def emit(src: int, out, now: Fraction) -> None:
        for dst, msg in out:
            if not g.has_edge(src, dst):
                raise SimulationError(f"node {src} sent {msg.kind} to non-neighbor {dst}",
                                      len(trace))
            seq = seqs[src, dst]
            seqs[src, dst] += 1
            env = Envelope(src, dst, msg, now, delay.deliver_time(src, dst, now), seq)
            heapq.heappush(heap, (env.deliver_time, dst, src, seq, env))

    zero = Fraction(0)
    for u in inits:
        emit(u, _guard(procs[u].on_start, len(trace), None), zero)
    while heap:
        if len(trace) >= budget:
            raise SimulationError(f"no quiescence within {budget} deliveries", len(trace))
        *_, env = heapq.heappop(heap)
        pos = len(trace)
        trace.append(env)
        metrics.record(env, account_bits(env.payload, n, wmax))
        out = _guard(lambda: procs[env.dst].on_message(env.src, env.payload), pos, env)
        emit(env.dst, out, env.deliver_time)
    metrics.per_node_state_size = {u: _state_size(p) for u, p in procs.items()}
    return RunResult(procs, metrics, trace)


def _guard(call, pos, env):
    try:
        return call()
    except SimulationError:
        raise
    except Exception as exc:  # surface protocol faults with their trace position
        where = "" if env is None else f" at t={env.deliver_time} {env.src}->{env.dst} {env.kind}"
        raise SimulationError(f"{type(exc).__name__}: {exc}{where}", pos, env) from exc


def _state_size(p) -> int:
    f = getattr(p, "state_size", None)
    return f() if f is not None else 0


def snapshot(states: dict) -> dict:
    return {u: (p.snapshot() if hasattr(p, "snapshot") else None) for u, p in states.items()}


def replay(trace: list[Envelope], g: Graph, factory: Callable,
           initiators: Iterable[int]) -> RunResult:
    """Re-execute a recorded delivery order and check every emission against it."""
    procs, inits = _build(g, factory, initiators)
    n, wmax = g.n, g.max_weight()
    metrics = Metrics()
    pending: dict[tuple[int, int], deque] = {}

    def emit(src: int, out) -> None:
        for dst, msg in out:
            pending.setdefault((src, dst), deque()).append(msg)

    for u in inits:
        emit(u, procs[u].on_start())
    for pos, env in enumerate(trace):
        q = pending.get((env.src, env.dst))
        if not q:
            raise ReplayDivergence(f"{env.src}->{env.dst} {env.kind} was never sent", pos, env)
        msg = q.popleft()
        if msg != env.payload:
            raise ReplayDivergence(
                f"{env.src}->{env.dst}: recorded {env.payload!r}, replay produced {msg!r}", pos, env)
        metrics.record(env, account_bits(msg, n, wmax))
        emit(env.dst, procs[env.dst].on_message(env.src, msg))
    left = [(ch, q[0]) for ch, q in sorted(pending.items()) if q]
    if left:
        (src, dst), msg = left[0]
        raise ReplayDivergence(f"replay sent {msg!r} on {src}->{dst} beyond the trace", len(trace))
    metrics.per_node_state_size = {u: _state_size(p) for u, p in procs.items()}
    return RunResult(procs, metrics, trace)


def trace_to_jsonl(trace: list[Envelope]) -> str:
    return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in trace)
