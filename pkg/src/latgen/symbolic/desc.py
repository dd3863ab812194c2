"""Finite descriptions of subsets of K x {0,1}.

A positive description is a finite union of blocks:

* ``Point(k, bit)``
* ``RowTail(n, m0, bit)``     = {(n⋉m, bit) : m >= m0}
* ``ZeroColTail(n0, bit)``    = {(n⋉0, bit) : n >= n0}         (ω²+1 only)
* ``FullTail(k0, bit)``       = {(k, bit) : k0 <= k <= Top}

Normalization is canonical, so two normalized descriptions are equal exactly
when they denote the same set.  Per bit the canonical form keeps the least
start of the final segment ``[k0, Top]`` that the set contains, the least start
of every cofinite row below it, the least start of a cofinite zero column
(only without a final segment), and the leftover points.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from ..errors import FamilyMismatch, ParseError, UnsupportedBlock
from .elements import TOP, ZERO, Family, OrdK, SymElem, check_ord, row_limit


@dataclass(frozen=True)
class Point:
    k: OrdK
    bit: int

    def contains(self, k: OrdK) -> bool:
        return k == self.k

    @property
    def start(self) -> OrdK:
        return self.k

    def sort_key(self):
        return (0, self.k, 0, self.bit)


@dataclass(frozen=True)
class RowTail:
    n: int
    m0: int
    bit: int

    def contains(self, k: OrdK) -> bool:
        return not k.top and k.q == self.n and k.r >= self.m0

    @property
    def start(self) -> OrdK:
        return OrdK.pair(self.n, self.m0)

    def sort_key(self):
        return (1, self.n, self.m0, self.bit)


@dataclass(frozen=True)
class ZeroColTail:
    n0: int
    bit: int

    def contains(self, k: OrdK) -> bool:
        return not k.top and k.r == 0 and k.q >= self.n0

    @property
    def start(self) -> OrdK:
        return OrdK.pair(self.n0, 0)

    def sort_key(self):
        return (2, self.n0, 0, self.bit)


@dataclass(frozen=True)
class FullTail:
    k0: OrdK
    bit: int

    def contains(self, k: OrdK) -> bool:
        return k >= self.k0

    @property
    def start(self) -> OrdK:
        return self.k0

    def sort_key(self):
        return (3, self.k0, 0, self.bit)


Block = Union[Point, RowTail, ZeroColTail, FullTail]


def block_limit(family: Family, b: Block) -> Optional[OrdK]:
    """Join of an infinite block that the block itself does not contain."""
    if isinstance(b, RowTail):
        return row_limit(family, b.n)
    if isinstance(b, ZeroColTail):
        return TOP
    return None


def check_block(family: Family, b: Block) -> None:
    if b.bit not in (0, 1):
        raise ValueError(f"bad bit in {b!r}")
    if isinstance(b, (Point, FullTail)):
        check_ord(family, b.start)
    elif isinstance(b, RowTail):
        if b.n < 0 or b.m0 < 0:
            raise ValueError(f"bad parameters in {b!r}")
        if family is Family.OMEGA and b.n != 0:
            raise FamilyMismatch(f"{b!r}: ω+1 has a single row")
    elif isinstance(b, ZeroColTail):
        if family is Family.OMEGA:
            raise FamilyMismatch("ZeroColTail needs the ω²+1 family")
        if b.n0 < 0:
            raise ValueError(f"bad parameters in {b!r}")
    else:
        raise TypeError(f"not a block: {b!r}")


# -- per-bit set algebra ---------------------------------------------------------
#
# Internally a bit's part of a description is a list of blocks carrying that bit.


def contains(blocks: Sequence[Block], k: OrdK) -> bool:
    return any(b.contains(k) for b in blocks)


def normalize_bit(family: Family, blocks: Sequence[Block], bit: int) -> tuple[Block, ...]:
    # a final segment starting at Top is just the point Top
    raw = [Point(TOP, bit) if isinstance(b, FullTail) and b.k0.top else b for b in blocks]
    if not raw:
        return ()

    def mem(k: OrdK) -> bool:
        return contains(raw, k)

    def row_start(n: int) -> Optional[int]:
        starts = [b.m0 for b in raw if isinstance(b, RowTail) and b.n == n]
        if not starts:
            return None
        m = min(starts)
        while m > 0 and mem(OrdK.pair(n, m - 1)):
            m -= 1
        return m

    fulls = [b.k0 for b in raw if isinstance(b, FullTail)]
    cand = min(fulls) if fulls else (TOP if mem(TOP) else None)
    while cand is not None:
        if cand.top:
            t = row_start(0) if family is Family.OMEGA else None
            if t is None:
                break
            cand = OrdK.pair(0, t)
        elif cand.r > 0:
            prev = OrdK.pair(cand.q, cand.r - 1)
            if not mem(prev):
                break
            cand = prev
        elif cand.q > 0:
            t = row_start(cand.q - 1)
            if t is None:
                break
            cand = OrdK.pair(cand.q - 1, t)
        else:
            break
    full = cand if cand is not None and not cand.top else None

    zcol = None
    if full is None:
        starts = [b.n0 for b in raw if isinstance(b, ZeroColTail)]
        if starts:
            z = min(starts)
            while z > 0 and mem(OrdK.pair(z - 1, 0)):
                z -= 1
            zcol = z

    rows = {}
    for b in raw:
        if isinstance(b, RowTail) and (full is None or b.n < full.q) and b.n not in rows:
            rows[b.n] = row_start(b.n)

    def covered(k: OrdK) -> bool:
        if full is not None and k >= full:
            return True
        if k.top:
            return False
        if zcol is not None and k.r == 0 and k.q >= zcol:
            return True
        return k.q in rows and k.r >= rows[k.q]

    points = set()
    for b in raw:
        if isinstance(b, Point) and not covered(b.k):
            points.add(b.k)
        elif isinstance(b, ZeroColTail) and full is not None:
            q = b.n0
            while OrdK.pair(q, 0) < full:
                if not covered(OrdK.pair(q, 0)):
                    points.add(OrdK.pair(q, 0))
                q += 1

    out: list[Block] = [Point(k, bit) for k in points]
    out += [RowTail(n, m, bit) for n, m in rows.items()]
    if zcol is not None:
        out.append(ZeroColTail(zcol, bit))
    if full is not None:
        out.append(FullTail(full, bit))
    return tuple(sorted(out, key=lambda b: b.sort_key()))


def interval_blocks(family: Family, lo: OrdK, hi: Optional[OrdK], bit: int) -> list[Block]:
    """Blocks for {k : lo <= k < hi}; ``hi=None`` means up to and including Top."""
    if hi is not None and hi <= lo:
        return []
    if lo.top:
        return [Point(TOP, bit)]
    if hi is None:
        return [FullTail(lo, bit)]
    if hi.top:
        if family is Family.OMEGA:
            return [RowTail(0, lo.r, bit)]
        raise UnsupportedBlock(f"[{lo!r}, ω²) has no finite block description")
    if lo.q == hi.q:
        return [Point(OrdK.pair(lo.q, r), bit) for r in range(lo.r, hi.r)]
    out: list[Block] = [RowTail(lo.q, lo.r, bit)]
    out += [RowTail(q, 0, bit) for q in range(lo.q + 1, hi.q)]
    out += [Point(OrdK.pair(hi.q, r), bit) for r in range(hi.r)]
    return out


def restrict(family: Family, blocks: Sequence[Block], lo: OrdK, hi: Optional[OrdK], bit: int) -> list[Block]:
    """Intersect with the interval ``[lo, hi)`` and relabel with ``bit``."""
    out: list[Block] = []
    for b in blocks:
        if isinstance(b, Point):
            if b.k >= lo and (hi is None or b.k < hi):
                out.append(Point(b.k, bit))
        elif isinstance(b, RowTail):
            end = row_limit(family, b.n)
            if hi is not None and hi < end:
                end = hi
            out += interval_blocks(family, max(lo, b.start), end, bit)
        elif isinstance(b, FullTail):
            out += interval_blocks(family, max(lo, b.k0), hi, bit)
        else:
            if lo.top:
                continue
            first = max(b.n0, lo.q + (1 if lo.r > 0 else 0))
            if hi is None or hi.top:
                out.append(ZeroColTail(first, bit))
            else:
                last = hi.q - 1 if hi.r == 0 else hi.q
                out += [Point(OrdK.pair(q, 0), bit) for q in range(first, last + 1)]
    return out


def minimum(blocks: Sequence[Block]) -> OrdK:
    return min(b.start for b in blocks)


def maximum(family: Family, blocks: Sequence[Block]) -> tuple[Optional[OrdK], OrdK]:
    """``(max, sup)``; ``max`` is None when the supremum is not attained."""
    sups = []
    for b in blocks:
        if isinstance(b, FullTail):
            sups.append(TOP)
        elif isinstance(b, Point):
            sups.append(b.k)
        else:
            sups.append(block_limit(family, b))
    sup = max(sups)
    return (sup if contains(blocks, sup) else None), sup


def limits(family: Family, blocks: Sequence[Block]) -> set[OrdK]:
    out = set()
    for b in blocks:
        lim = block_limit(family, b)
        if lim is not None:
            out.add(lim)
    return out


# -- descriptions --------------------------------------------------------------------


def _check_family(family, items) -> Family:
    family = Family.parse(family)
    for it in items:
        if isinstance(it, SymElem):
            if it.family is not family:
                raise FamilyMismatch(f"{it!r} is not in the {family.value} family")
        else:
            check_block(family, it)
    return family


@dataclass(frozen=True)
class Positive:
    family: Family
    blocks: tuple[Block, ...]

    @classmethod
    def of(cls, family, blocks: Iterable[Union[Block, SymElem]] = ()) -> Positive:
        items = [Point(b.k, b.bit) if isinstance(b, SymElem) else b for b in blocks]
        family = _check_family(family, items)
        parts = tuple(normalize_bit(family, [b for b in items if b.bit == bit], bit) for bit in (0, 1))
        return cls(family, parts[0] + parts[1])

    def bit_blocks(self, bit: int) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.bit == bit)

    def __contains__(self, e: SymElem) -> bool:
        return e.family is self.family and any(b.bit == e.bit and b.contains(e.k) for b in self.blocks)

    def union(self, other: Union[Positive, Iterable]) -> Positive:
        more = other.blocks if isinstance(other, Positive) else tuple(other)
        if isinstance(other, Positive) and other.family is not self.family:
            raise FamilyMismatch("union across families")
        return Positive.of(self.family, self.blocks + tuple(more))

    def is_empty(self) -> bool:
        return not self.blocks

    def __repr__(self) -> str:
        return f"Positive({self.family.value}, {list(self.blocks)})"


@dataclass(frozen=True)
class CoFinite:
    """Everything except finitely many elements."""

    family: Family
    excluded: frozenset

    @classmethod
    def of(cls, family, excluded: Iterable[SymElem]) -> CoFinite:
        excluded = frozenset(excluded)
        return cls(_check_family(family, excluded), excluded)

    def __contains__(self, e: SymElem) -> bool:
        return e.family is self.family and e not in self.excluded

    def sorted_excluded(self) -> list[SymElem]:
        return sorted(self.excluded, key=lambda e: (e.k, e.bit))

    def __repr__(self) -> str:
        return f"CoFinite({self.family.value}, {self.sorted_excluded()})"


SetDesc = Union[Positive, CoFinite]


def whole(family) -> Positive:
    return Positive.of(family, [FullTail(ZERO, 0), FullTail(ZERO, 1)])


def to_positive(d: SetDesc) -> Positive:
    """Rewrite a co-finite description as blocks (UnsupportedBlock if impossible)."""
    if isinstance(d, Positive):
        return d
    blocks: list[Block] = []
    for bit in (0, 1):
        holes = sorted(e.k for e in d.excluded if e.bit == bit)
        lo: Optional[OrdK] = ZERO
        for h in holes:
            blocks += interval_blocks(d.family, lo, h, bit)
            lo = None if h.top else h.succ()
        if lo is not None:
            blocks += interval_blocks(d.family, lo, None, bit)
    return Positive.of(d.family, blocks)


def sample_members(d: SetDesc, bound: int) -> list[SymElem]:
    return [e for e in window(d.family, bound) if e in d]


def window(family, bound: int) -> list[SymElem]:
    """All elements whose coordinates are at most ``bound``, plus the top row."""
    family = Family.parse(family)
    ks = [OrdK.pair(0, r) for r in range(bound + 1)]
    if family is Family.OMEGA_SQ:
        ks = [OrdK.pair(q, r) for q in range(bound + 1) for r in range(bound + 1)]
    ks.append(TOP)
    return [SymElem(family, k, b) for k in ks for b in (0, 1)]


# -- JSON --------------------------------------------------------------------------


def _ord_json(family: Family, k: OrdK) -> dict:
    if k.top:
        return {"top": True}
    return {"n": k.r} if family is Family.OMEGA else {"n": k.q, "m": k.r}


def _ord_parse(family: Family, obj: dict) -> OrdK:
    if obj.get("top"):
        return TOP
    try:
        if family is Family.OMEGA:
            return OrdK.pair(0, int(obj["n"]))
        return OrdK.pair(int(obj["n"]), int(obj["m"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ordinal in {obj!r}") from exc


def block_to_json(family: Family, b: Block) -> dict:
    if isinstance(b, Point):
        return {"t": "point", **_ord_json(family, b.k), "bit": b.bit}
    if isinstance(b, RowTail):
        return {"t": "rowtail", "n": b.n, "m0": b.m0, "bit": b.bit}
    if isinstance(b, ZeroColTail):
        return {"t": "zerocoltail", "n0": b.n0, "bit": b.bit}
    return {"t": "fulltail", **_ord_json(family, b.k0), "bit": b.bit}


def block_from_json(family: Family, obj: dict) -> Block:
    try:
        t = obj["t"]
        bit = int(obj["bit"])
        if t == "point":
            return Point(_ord_parse(family, obj), bit)
        if t == "rowtail":
            return RowTail(int(obj.get("n", 0)), int(obj["m0"]), bit)
        if t == "zerocoltail":
            return ZeroColTail(int(obj["n0"]), bit)
        if t == "fulltail":
            return FullTail(_ord_parse(family, obj), bit)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad block {obj!r}") from exc
    raise ParseError(f"unknown block type {obj.get('t')!r}")


def elem_to_json(e: SymElem) -> dict:
    return {**_ord_json(e.family, e.k), "bit": e.bit}


def elem_from_json(family: Family, obj: dict) -> SymElem:
    return SymElem(family, _ord_parse(family, obj), int(obj["bit"]))


def desc_to_json(d: SetDesc) -> dict:
    if isinstance(d, Positive):
        return {
            "family": d.family.value,
            "kind": "positive",
            "blocks": [block_to_json(d.family, b) for b in d.blocks],
            "excluded": [],
        }
    return {
        "family": d.family.value,
        "kind": "cofinite",
        "blocks": [],
        "excluded": [elem_to_json(e) for e in d.sorted_excluded()],
    }


def desc_from_json(obj: dict) -> SetDesc:
    try:
        family = Family.parse(obj["family"])
        kind = obj["kind"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from exc
    if kind == "positive":
        return Positive.of(family, [block_from_json(family, b) for b in obj.get("blocks", [])])
    if kind == "cofinite":
        return CoFinite.of(family, [elem_from_json(family, e) for e in obj.get("excluded", [])])
    raise ParseError(f"unknown description kind {kind!r}")
