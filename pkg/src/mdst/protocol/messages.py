"""Protocol message alphabet.

Each message declares how many node-id, distance and flag fields it carries
so the engine can charge bits uniformly (see :func:`mdst.sim.engine.account_bits`).
"""
from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import ClassVar

from ..graph import fmt_half


class ProtocolError(RuntimeError):
    """A node observed a message sequence the protocol rules forbid."""


@dataclass(frozen=True)
class Message:
    kind: ClassVar[str] = "message"
    ID_FIELDS: ClassVar[int] = 0
    DIST_FIELDS: ClassVar[int] = 0
    FLAG_FIELDS: ClassVar[int] = 0

    def payload(self) -> list:
        return [_plain(x) for x in astuple(self)]


def _plain(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        return "inf"
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    return x


@dataclass(frozen=True, order=False)
class Phi:
    """A center candidate: offset, eccentricity bound and the edge it lies on.

    ``id1 == id2`` encodes the real node ``id1`` (``alpha_best == 0``).
    """

    alpha_best: int
    upbound: int
    id1: int
    id2: int

    def key(self) -> tuple:
        return (self.upbound, self.id1, self.id2, self.alpha_best)

    def __str__(self) -> str:
        return f"({fmt_half(self.alpha_best)}, {fmt_half(self.upbound)}, {self.id1}, {self.id2})"


# -- shortest paths -----------------------------------------------------------

@dataclass(frozen=True)
class Update(Message):
    kind: ClassVar[str] = "Update"
    ID_FIELDS: ClassVar[int] = 2
    DIST_FIELDS: ClassVar[int] = 1
    sender: int
    selected: int
    distance: int


@dataclass(frozen=True)
class Floor(Message):
    """Lower bound on the sender's future announcements (``inf``: none pending)."""

    kind: ClassVar[str] = "Floor"
    DIST_FIELDS: ClassVar[int] = 1
    distance: float


@dataclass(frozen=True)
class Inactive(Message):
    kind: ClassVar[str] = "Inactive"


# -- size discovery (echo with extinction) ------------------------------------

@dataclass(frozen=True)
class Explore(Message):
    kind: ClassVar[str] = "Explore"
    ID_FIELDS: ClassVar[int] = 1
    label: int


@dataclass(frozen=True)
class Echo(Message):
    kind: ClassVar[str] = "Echo"
    ID_FIELDS: ClassVar[int] = 2
    label: int
    count: int


@dataclass(frozen=True)
class Size(Message):
    kind: ClassVar[str] = "Size"
    ID_FIELDS: ClassVar[int] = 1
    n: int


# -- dissemination tree rooted at the smallest id --------------------------------

@dataclass(frozen=True)
class ParentNotify(Message):
    kind: ClassVar[str] = "ParentNotify"
    FLAG_FIELDS: ClassVar[int] = 1
    is_parent: bool


@dataclass(frozen=True)
class EccUp(Message):
    kind: ClassVar[str] = "EccUp"
    ID_FIELDS: ClassVar[int] = 1
    DIST_FIELDS: ClassVar[int] = 2
    max_ecc: int
    min_ecc: int
    argmin: int


@dataclass(frozen=True)
class GlobalsDown(Message):
    kind: ClassVar[str] = "GlobalsDown"
    DIST_FIELDS: ClassVar[int] = 2
    diam: int
    radius: int


# -- center search ----------------------------------------------------------------

@dataclass(frozen=True)
class PhiUp(Message):
    kind: ClassVar[str] = "PhiUp"
    ID_FIELDS: ClassVar[int] = 2
    DIST_FIELDS: ClassVar[int] = 3
    phi: Phi
    edge_weight: int

    def payload(self) -> list:
        p = self.phi
        return [p.alpha_best, p.upbound, p.id1, p.id2, self.edge_weight]


@dataclass(frozen=True)
class PhiDown(Message):
    kind: ClassVar[str] = "PhiDown"
    ID_FIELDS: ClassVar[int] = 2
    DIST_FIELDS: ClassVar[int] = 3
    phi: Phi
    edge_weight: int

    def payload(self) -> list:
        p = self.phi
        return [p.alpha_best, p.upbound, p.id1, p.id2, self.edge_weight]


APSP_KINDS = frozenset({"Update", "Floor", "Inactive"})
