"""The dual ω-chain: c_0 > c_1 > c_2 > ... > d, as a meet-semilattice.

Subsets are finite sets of indices, an optional tail {c_i : i >= i0} and an
optional d.  Binary meets stay inside a chain, so a finitary closure adds
nothing; the meet of any infinite set of c's is d, so a countably complete
closure adds d as soon as the set is infinite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ..config import Completeness


@dataclass(frozen=True)
class DualChainDesc:
    points: frozenset = frozenset()
    tail: Optional[int] = None
    has_d: bool = False

    @classmethod
    def of(cls, points: Iterable[int] = (), tail: Optional[int] = None, has_d: bool = False) -> DualChainDesc:
        pts = set(points)
        if any(i < 0 for i in pts) or (tail is not None and tail < 0):
            raise ValueError("indices are naturals")
        if tail is not None:
            pts = {i for i in pts if i < tail}
            while tail - 1 in pts:
                tail -= 1
                pts.discard(tail)
        return cls(frozenset(pts), tail, has_d)

    @classmethod
    def whole(cls) -> DualChainDesc:
        return cls.of(tail=0, has_d=True)

    def contains_c(self, i: int) -> bool:
        return i in self.points or (self.tail is not None and i >= self.tail)

    @property
    def infinite(self) -> bool:
        return self.tail is not None

    def __repr__(self) -> str:
        parts = [f"c{i}" for i in sorted(self.points)]
        if self.tail is not None:
            parts.append(f"CTail({self.tail})")
        if self.has_d:
            parts.append("d")
        return "{" + ", ".join(parts) + "}"

    def to_json(self) -> dict:
        return {"points": sorted(self.points), "tail": self.tail, "d": self.has_d}


def _mode(completeness) -> Completeness:
    return completeness if isinstance(completeness, Completeness) else Completeness(completeness)


def dc_meet(x, y):
    """Meet of two carrier elements: an index for c_i, or the string "d"."""
    if x == "d" or y == "d":
        return "d"
    return max(x, y)


def dual_chain_closure(x: DualChainDesc, completeness=Completeness.COUNTABLE, include_empty_meet: bool = False) -> DualChainDesc:
    mode = _mode(completeness)
    points = set(x.points)
    if include_empty_meet:
        points.add(0)
    has_d = x.has_d or (mode is not Completeness.FINITARY and x.infinite)
    return DualChainDesc.of(points, x.tail, has_d)


def is_closed(x: DualChainDesc, completeness=Completeness.COUNTABLE, include_empty_meet: bool = False) -> bool:
    return dual_chain_closure(x, completeness, include_empty_meet) == x


@dataclass(frozen=True)
class DualChainStatus:
    element: str
    indispensable: bool
    non_generator: bool
    closure_of_rest: DualChainDesc

    def to_json(self) -> dict:
        return {
            "element": self.element,
            "indispensable": self.indispensable,
            "non_generator": self.non_generator,
            "closure_of_complement": self.closure_of_rest.to_json(),
        }


def status_of_d(completeness=Completeness.COUNTABLE, include_empty_meet: bool = False) -> DualChainStatus:
    """Classify d from closure outputs.

    Every c_i is indispensable (its complement is closed: a meet of other
    elements is one of them or d), so each generating set contains CTail(0).
    Hence d is a non-generator iff d ∈ <CTail(0)>, and otherwise L - {d} =
    <CTail(0)> is closed and d is indispensable.
    """
    rest = dual_chain_closure(DualChainDesc.of(tail=0), completeness, include_empty_meet)
    forced = rest.has_d
    return DualChainStatus("d", indispensable=not forced, non_generator=forced, closure_of_rest=rest)
