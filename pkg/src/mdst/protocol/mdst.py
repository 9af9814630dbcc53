"""Center search and tree construction on top of the shortest-paths protocol.

After the eccentricity convergecast every node knows ``Diam`` and
``Radius``.  It scores its own position and each edge it owns (the smaller
endpoint owns an edge), the best candidate climbs the tree toward ``u_min``
with ``PhiUp``, and the winner comes back down with ``PhiDown`` together
with the weight of its edge.  Each node then picks its parent in the
shortest-paths tree rooted at the center.
"""
from __future__ import annotations

from ..oracle import CENTER, dominating_pairs, gamma_star
from .apsp import ApspProcess
from .messages import Phi, PhiDown, PhiUp, ProtocolError


class MdstProcess(ApspProcess):
    def __init__(self, node_id: int, neighbors: dict[int, int], pruning: bool = True):
        super().__init__(node_id, neighbors)
        self.pruning = pruning
        self.phi: Phi | None = None
        self.phi_star: Phi | None = None
        self._phi_in: dict[int, tuple[Phi, int]] = {}
        self._phi_sent = False
        self.center: Phi | None = None
        self.center_edge_weight: int | None = None
        self.parent_in_mdst = None
        self.d_to_center: int | None = None
        self.edges_scanned = 0

    def after_globals(self) -> None:
        self.phi = self.local_center_scan()
        self._check_phi()

    def local_center_scan(self) -> Phi:
        phi = Phi(0, self.ecc, self.id, self.id)
        for v in sorted(x for x in self.nbrs if x > self.id):
            if self.pruning and 2 * phi.upbound <= self.diam:
                break
            row_v = self.neighbor_dist[v]
            pairs = dominating_pairs((self.dist[z], row_v[z]) for z in self.dist)
            alpha, localmin = gamma_star(self.nbrs[v], pairs)
            self.edges_scanned += 1
            cand = Phi(alpha, localmin, self.id, v)
            if cand.key() < phi.key():
                phi = cand
        return phi

    def on_phiup(self, src: int, m: PhiUp) -> None:
        if self.children is not None and src not in self.children:
            raise ProtocolError(f"node {self.id}: PhiUp from non-child {src}")
        if src in self._phi_in:
            raise ProtocolError(f"node {self.id}: duplicate PhiUp from {src}")
        self._phi_in[src] = (m.phi, m.edge_weight)
        self._check_phi()

    def _check_phi(self) -> None:
        if self.phi is None or self._phi_sent or not self.children <= set(self._phi_in):
            return
        for v in self._phi_in:
            if v not in self.children:
                raise ProtocolError(f"node {self.id}: PhiUp from non-child {v}")
        self._phi_sent = True
        best = self.phi
        w = 0 if best.id1 == best.id2 else self.nbrs[best.id2]
        for cand, cand_w in self._phi_in.values():
            if cand.key() < best.key():
                best, w = cand, cand_w
        self.phi_star = best
        if self.parent_to_umin is not None:
            self._send(self.parent_to_umin, PhiUp(best, w))
        else:
            self._learn_center(best, w)

    def on_phidown(self, src: int, m: PhiDown) -> None:
        if src != self.parent_to_umin or self.center is not None:
            raise ProtocolError(f"node {self.id}: unexpected PhiDown from {src}")
        self._learn_center(m.phi, m.edge_weight)

    def _learn_center(self, phi: Phi, w: int) -> None:
        self.center, self.center_edge_weight = phi, w
        for v in sorted(self.children):
            self._send(v, PhiDown(phi, w))
        self.attach_to_center(phi, w)

    def _dist_via(self, row: dict[int, int], phi: Phi, w: int) -> int:
        if phi.id1 == phi.id2:
            return row[phi.id1]
        return min(row[phi.id1] + phi.alpha_best, row[phi.id2] + w - phi.alpha_best)

    def attach_to_center(self, phi: Phi, w: int) -> None:
        d = self._dist_via(self.dist, phi, w)
        self.d_to_center = d
        if phi.id1 == phi.id2 and self.id == phi.id1:
            self.parent_in_mdst = None
            return
        if phi.id1 != phi.id2 and self.id in (phi.id1, phi.id2):
            half = phi.alpha_best if self.id == phi.id1 else w - phi.alpha_best
            if d == half:
                self.parent_in_mdst = CENTER
                return
        for v in sorted(self.nbrs):
            if self.nbrs[v] + self._dist_via(self.neighbor_dist[v], phi, w) == d:
                self.parent_in_mdst = v
                return
        raise ProtocolError(f"node {self.id}: no neighbor on a shortest route to the center")

    def report(self) -> dict:
        return {
            "u_min": self.u_min,
            "diam": self.diam,
            "radius": self.radius,
            "phi_star": None if self.center is None else self.center.key(),
            "parent_in_mdst": self.parent_in_mdst,
            "d_to_center": self.d_to_center,
        }

    def snapshot(self) -> dict:
        snap = super().snapshot()
        snap.update(phi=None if self.phi is None else self.phi.key(), report=self.report())
        return snap
