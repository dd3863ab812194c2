"""Elements of the countable lattices K x {0,1} with K = ω+1 or K = ω²+1.

An ordinal below ω² is stored as the pair ``(q, r)`` meaning ``q·ω + r``;
``TOP`` is the added maximum (ω or ω² depending on the family).  In the ω+1
family only ``q == 0`` is allowed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import FamilyMismatch


class Family(enum.Enum):
    OMEGA = "omega"
    OMEGA_SQ = "omega_sq"

    @classmethod
    def parse(cls, name) -> Family:
        if isinstance(name, Family):
            return name
        try:
            return cls(name)
        except ValueError:
            raise FamilyMismatch(f"unknown family {name!r}") from None

    @property
    def top_name(self) -> str:
        return "ω" if self is Family.OMEGA else "ω²"


@dataclass(frozen=True, order=True)
class OrdK:
    # field order gives the lexicographic order with TOP above every pair
    top: bool
    q: int
    r: int

    @classmethod
    def pair(cls, q: int, r: int) -> OrdK:
        if q < 0 or r < 0:
            raise ValueError("ordinal coordinates are naturals")
        return cls(False, q, r)

    @property
    def is_limit(self) -> bool:
        """Limits of the carrier: ω·q for q >= 1 and the top (ω or ω²)."""
        return self.top or (self.r == 0 and self.q > 0)

    def succ(self) -> OrdK:
        if self.top:
            raise ValueError("the top has no successor")
        return OrdK(False, self.q, self.r + 1)

    def __repr__(self) -> str:
        return "Top" if self.top else f"{self.q}⋉{self.r}"


TOP = OrdK(True, 0, 0)
ZERO = OrdK(False, 0, 0)


def check_ord(family: Family, k: OrdK) -> None:
    if family is Family.OMEGA and not k.top and k.q != 0:
        raise FamilyMismatch(f"{k!r} is not an element of ω+1")


def row_limit(family: Family, n: int) -> OrdK:
    """Supremum of row ``n``, i.e. of {n⋉m : m in N}."""
    return TOP if family is Family.OMEGA else OrdK.pair(n + 1, 0)


def render_ord(family: Family, k: OrdK) -> str:
    if k.top:
        return family.top_name
    return str(k.r) if family is Family.OMEGA else f"{k.q}⋉{k.r}"


@dataclass(frozen=True, order=True)
class SymElem:
    family: Family = Family.OMEGA_SQ
    k: OrdK = ZERO
    bit: int = 0

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        check_ord(self.family, self.k)

    def __repr__(self) -> str:
        return f"({render_ord(self.family, self.k)},{self.bit})"


def elem(family, k_or_q, r: int | None = None, bit: int = 0) -> SymElem:
    """``elem(OMEGA, 3, bit=1)`` is (3,1); ``elem(OMEGA_SQ, 2, 5, 0)`` is (2⋉5,0);
    pass ``TOP`` as the ordinal for the top row."""
    family = Family.parse(family)
    if isinstance(k_or_q, OrdK):
        k = k_or_q
    elif family is Family.OMEGA:
        k = OrdK.pair(0, k_or_q)
    else:
        k = OrdK.pair(k_or_q, r)
    return SymElem(family, k, bit)


def bottom(family) -> SymElem:
    return SymElem(Family.parse(family), ZERO, 0)


def top(family) -> SymElem:
    return SymElem(Family.parse(family), TOP, 1)


def _same(x: SymElem, y: SymElem) -> None:
    if x.family is not y.family:
        raise FamilyMismatch(f"{x!r} and {y!r} live in different lattices")


def sym_meet(x: SymElem, y: SymElem) -> SymElem:
    _same(x, y)
    return SymElem(x.family, min(x.k, y.k), min(x.bit, y.bit))


def sym_join(x: SymElem, y: SymElem) -> SymElem:
    _same(x, y)
    return SymElem(x.family, max(x.k, y.k), max(x.bit, y.bit))


def sym_leq(x: SymElem, y: SymElem) -> bool:
    _same(x, y)
    return x.k <= y.k and x.bit <= y.bit
