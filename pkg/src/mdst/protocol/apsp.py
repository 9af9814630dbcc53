"""Per-node state machine for the process-terminating all-pairs shortest paths.

Every node streams ``Update(self, z, d(self, z))`` to each neighbor exactly
once per destination ``z``, in nondecreasing distance order, and only once
the distance is final.  A pending estimate ``d`` is final when no neighbor
can still undercut it: for every neighbor ``v``, ``w(u, v) + floor(v) >= d``,
where ``floor(v)`` lower-bounds what ``v`` may still announce.  Nodes that
cannot make progress publish their own bound with ``Floor``; the bound sent
to ``v`` ignores ``v``'s own contribution, because anything ``u`` learns
through ``v`` concerns destinations ``v`` has already settled.

Closing a channel needs the network size, which an echo wave with
extinction (smallest initiator id wins) computes concurrently.  Once a node
has announced all ``n`` destinations it sends one ``Inactive`` per channel;
it terminates on receiving one per channel in return.  The dissemination
tree toward the smallest id is then made explicit with ``ParentNotify``
and used for the eccentricity convergecast.
"""
from __future__ import annotations

from ..graph import INF
from .messages import (
    EccUp,
    Echo,
    Explore,
    Floor,
    GlobalsDown,
    Inactive,
    Message,
    ParentNotify,
    ProtocolError,
    Size,
    Update,
)


class ApspProcess:
    def __init__(self, node_id: int, neighbors: dict[int, int]):
        self.id = node_id
        self.nbrs = dict(neighbors)
        self.awake = False
        self.initiator = False
        self._out: list[tuple[int, Message]] = []

        # shortest-path tables
        self.dist: dict[int, int] = {}
        self.next_hop: dict[int, int] = {}
        self.update_set: set[int] = set()
        self.certified: list[int] = []
        self._settled: set[int] = set()
        self.neighbor_dist: dict[int, dict[int, int]] = {v: {} for v in self.nbrs}
        self.floor_in: dict[int, float] = {v: 0 for v in self.nbrs}
        self._told: dict[int, float] = {v: -1 for v in self.nbrs}
        self.inactive_in = {v: False for v in self.nbrs}
        self.inactive_out = {v: False for v in self.nbrs}
        self.apsp_done = False

        # echo wave for the network size
        self.n_total: int | None = None
        self._label: float = INF
        self._wave_parent: int | None = None
        self._waiting: set[int] = set()
        self._wave_count = 0
        self._wave_children: set[int] = set()
        self._wave_reported: float = INF

        # dissemination tree toward u_min
        self.u_min: int | None = None
        self.parent_to_umin: int | None = None
        self.children: set[int] | None = None
        self._notify: dict[int, bool] = {}
        self._ecc_in: dict[int, EccUp] = {}
        self._ecc_sent = False
        self.ecc: int | None = None
        self.diam: int | None = None
        self.radius: int | None = None
        self.argmin_ecc: int | None = None

    # -- engine entry points ---------------------------------------------------

    def on_start(self) -> list[tuple[int, Message]]:
        if self.initiator:
            raise ProtocolError(f"node {self.id} initialised twice")
        self.initiator = True
        self._wake()
        self._label = self.id
        self._wave_count = 1
        self._waiting = set(self.nbrs)
        for v in sorted(self.nbrs):
            self._send(v, Explore(self.id))
        self._check_wave()
        self.select_next()
        return self._flush()

    def on_message(self, src: int, msg: Message) -> list[tuple[int, Message]]:
        if src not in self.nbrs:
            raise ProtocolError(f"node {self.id} got {msg.kind} over a non-edge from {src}")
        self._wake()
        handler = getattr(self, "on_" + msg.kind.lower())
        handler(src, msg)
        self.select_next()
        return self._flush()

    def _send(self, dst: int, msg: Message) -> None:
        self._out.append((dst, msg))

    def _flush(self):
        out, self._out = self._out, []
        return out

    # -- shortest paths ------------------------------------------------------------

    def _wake(self) -> None:
        if self.awake:
            return
        self.awake = True
        self.dist[self.id] = 0
        self.update_set.add(self.id)
        # neighbor ids and weights are known locally
        for v, w in self.nbrs.items():
            self._relax(v, w, v)

    def _relax(self, z: int, cand: int, via: int) -> None:
        if z in self._settled:
            if cand < self.dist[z]:
                raise ProtocolError(f"node {self.id}: settled distance to {z} undercut")
            return
        cur = self.dist.get(z, INF)
        if cand < cur:
            self.dist[z] = cand
            self.next_hop[z] = via
            self.update_set.add(z)
        elif cand == cur and via < self.next_hop.get(z, via):
            self.next_hop[z] = via

    def on_update(self, src: int, m: Update) -> None:
        if self.inactive_in[src]:
            raise ProtocolError(f"node {self.id}: Update from {src} after its Inactive")
        if m.sender != src:
            raise ProtocolError(f"node {self.id}: Update claims sender {m.sender}, came from {src}")
        row = self.neighbor_dist[src]
        if m.selected in row:
            raise ProtocolError(f"node {self.id}: {src} announced {m.selected} twice")
        row[m.selected] = m.distance
        # items may dip below an advertised floor only for destinations we settled first
        if m.distance > self.floor_in[src]:
            self.floor_in[src] = m.distance
        self._relax(m.selected, self.nbrs[src] + m.distance, src)

    def on_floor(self, src: int, m: Floor) -> None:
        if self.inactive_in[src]:
            raise ProtocolError(f"node {self.id}: Floor from {src} after its Inactive")
        if m.distance > self.floor_in[src]:
            self.floor_in[src] = m.distance

    def on_inactive(self, src: int, m: Inactive) -> None:
        if self.inactive_in[src]:
            raise ProtocolError(f"node {self.id}: duplicate Inactive from {src}")
        self.inactive_in[src] = True
        self.floor_in[src] = INF
        self._check_terminated()

    def _bound(self, exclude: int | None = None) -> float:
        return min((w + self.floor_in[v] for v, w in self.nbrs.items() if v != exclude),
                   default=INF)

    def select_next(self) -> None:
        """Announce every estimate that can no longer improve, then close or publish floors."""
        if not self.awake or self.apsp_done or all(self.inactive_out.values()) and self.nbrs:
            return
        bound = self._bound()
        while self.update_set:
            z = min(self.update_set, key=lambda x: (self.dist[x], x))
            d = self.dist[z]
            if d > bound:
                break
            self.update_set.discard(z)
            self._settled.add(z)
            self.certified.append(z)
            for v in sorted(self.nbrs):
                self._send(v, Update(self.id, z, d))
                self._told[v] = max(self._told[v], d)
        if self.n_total is not None and len(self.certified) == self.n_total:
            for v in sorted(self.nbrs):
                self._send(v, Inactive())
                self.inactive_out[v] = True
            self._check_terminated()
            return
        pmin = min((self.dist[z] for z in self.update_set), default=INF)
        for v in sorted(self.nbrs):
            f = min(pmin, self._bound(exclude=v))
            if f > self._told[v]:
                self._send(v, Floor(f))
                self._told[v] = f

    def _check_terminated(self) -> None:
        if self.apsp_done or self.n_total is None or len(self.certified) != self.n_total:
            return
        if all(self.inactive_in.values()) and all(self.inactive_out.values()):
            self.apsp_done = True
            for v, row in self.neighbor_dist.items():
                if len(row) != self.n_total:
                    raise ProtocolError(f"node {self.id}: incomplete row from {v}")
            self.finish_apsp()

    # -- size discovery ----------------------------------------------------------

    def on_explore(self, src: int, m: Explore) -> None:
        if m.label < self._label:
            self._label = m.label
            self._wave_parent = src
            self._wave_count = 1
            self._wave_children = set()
            self._waiting = set(self.nbrs) - {src}
            for v in sorted(self._waiting):
                self._send(v, Explore(m.label))
            self._check_wave()
        elif m.label == self._label:
            self._waiting.discard(src)
            self._check_wave()

    def on_echo(self, src: int, m: Echo) -> None:
        if m.label != self._label:
            return
        self._wave_count += m.count
        self._wave_children.add(src)
        self._waiting.discard(src)
        self._check_wave()

    def _check_wave(self) -> None:
        if self._waiting or self._wave_reported == self._label or self._label == INF:
            return
        self._wave_reported = self._label
        if self._wave_parent is None:
            self._learn_size(self._wave_count)
        else:
            self._send(self._wave_parent, Echo(self._label, self._wave_count))

    def on_size(self, src: int, m: Size) -> None:
        if src != self._wave_parent:
            raise ProtocolError(f"node {self.id}: Size from non-parent {src}")
        self._learn_size(m.n)

    def _learn_size(self, n: int) -> None:
        self.n_total = n
        for v in sorted(self._wave_children):
            self._send(v, Size(n))
        self._check_terminated()

    # -- dissemination tree ------------------------------------------------------------

    def finish_apsp(self) -> None:
        self.u_min = min(self.dist)
        self.ecc = max(self.dist.values())
        if self.u_min != self.id:
            target = self.dist[self.u_min]
            self.parent_to_umin = min(
                v for v, w in self.nbrs.items()
                if w + self.neighbor_dist[v][self.u_min] == target)
        for v in sorted(self.nbrs):
            self._send(v, ParentNotify(v == self.parent_to_umin))
        self._check_children()

    def on_parentnotify(self, src: int, m: ParentNotify) -> None:
        if src in self._notify:
            raise ProtocolError(f"node {self.id}: duplicate ParentNotify from {src}")
        self._notify[src] = m.is_parent
        self._check_children()

    def _check_children(self) -> None:
        if not self.apsp_done or self.children is not None or len(self._notify) < len(self.nbrs):
            return
        self.children = {v for v, flag in self._notify.items() if flag}
        if self.parent_to_umin in self.children:
            raise ProtocolError(f"node {self.id}: {self.parent_to_umin} is both parent and child")
        self._check_ecc()

    def on_eccup(self, src: int, m: EccUp) -> None:
        if self.children is not None and src not in self.children:
            raise ProtocolError(f"node {self.id}: EccUp from non-child {src}")
        self._ecc_in[src] = m
        self._check_ecc()

    def _check_ecc(self) -> None:
        if self.children is None or self._ecc_sent or not self.children <= set(self._ecc_in):
            return
        for v in self._ecc_in:
            if v not in self.children:
                raise ProtocolError(f"node {self.id}: EccUp from non-child {v}")
        self._ecc_sent = True
        hi, lo, arg = self.ecc, self.ecc, self.id
        for m in self._ecc_in.values():
            hi = max(hi, m.max_ecc)
            if (m.min_ecc, m.argmin) < (lo, arg):
                lo, arg = m.min_ecc, m.argmin
        if self.parent_to_umin is not None:
            self._send(self.parent_to_umin, EccUp(hi, lo, arg))
        else:
            self.argmin_ecc = arg
            self._learn_globals(hi, lo)

    def on_globalsdown(self, src: int, m: GlobalsDown) -> None:
        if src != self.parent_to_umin or self.diam is not None:
            raise ProtocolError(f"node {self.id}: unexpected GlobalsDown from {src}")
        self._learn_globals(m.diam, m.radius)

    def _learn_globals(self, diam: int, radius: int) -> None:
        self.diam, self.radius = diam, radius
        for v in sorted(self.children):
            self._send(v, GlobalsDown(diam, radius))
        self.after_globals()

    def after_globals(self) -> None:
        """Hook for the center search; the bare shortest-paths protocol stops here."""

    # -- inspection ----------------------------------------------------------------

    def state_size(self) -> int:
        return len(self.dist) + sum(len(r) for r in self.neighbor_dist.values())

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "dist": sorted(self.dist.items()),
            "neighbor_dist": sorted((v, sorted(r.items())) for v, r in self.neighbor_dist.items()),
            "certified": list(self.certified),
            "n_total": self.n_total,
            "u_min": self.u_min,
            "parent_to_umin": self.parent_to_umin,
            "children": sorted(self.children) if self.children is not None else None,
            "diam": self.diam,
            "radius": self.radius,
        }
