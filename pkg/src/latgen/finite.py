"""Finite posets, meet-semilattices and lattices with explicit operation tables.

Elements are the dense indices ``0..n-1``; labels are presentation only.
Tables are stored as read-only numpy arrays, with tuple copies cached for the
pure-Python inner loops of the closure code.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    BoundExceeded,
    CapacityExceeded,
    CyclicCovers,
    DuplicateCover,
    NotAChain,
    NotALattice,
    ParseError,
)

DEFAULT_CAPACITY = 4096
ENUMERATION_BOUND = 6


@dataclass(frozen=True)
class SubsetMask:
    """Fixed-width bit vector over element indices."""

    width: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError(f"mask {self.bits:#x} does not fit width {self.width}")

    @classmethod
    def of(cls, width: int, elements: Iterable[int] = ()) -> SubsetMask:
        bits = 0
        for e in elements:
            if not 0 <= e < width:
                raise ValueError(f"element {e} outside carrier of size {width}")
            bits |= 1 << e
        return cls(width, bits)

    @classmethod
    def full(cls, width: int) -> SubsetMask:
        return cls(width, (1 << width) - 1)

    def _same(self, other: SubsetMask) -> None:
        if other.width != self.width:
            raise ValueError("mask widths differ")

    def __or__(self, other: SubsetMask) -> SubsetMask:
        self._same(other)
        return SubsetMask(self.width, self.bits | other.bits)

    def __and__(self, other: SubsetMask) -> SubsetMask:
        self._same(other)
        return SubsetMask(self.width, self.bits & other.bits)

    def __sub__(self, other: SubsetMask) -> SubsetMask:
        self._same(other)
        return SubsetMask(self.width, self.bits & ~other.bits)

    def complement(self) -> SubsetMask:
        return SubsetMask(self.width, ~self.bits & ((1 << self.width) - 1))

    def add(self, e: int) -> SubsetMask:
        return SubsetMask(self.width, self.bits | (1 << e))

    def remove(self, e: int) -> SubsetMask:
        return SubsetMask(self.width, self.bits & ~(1 << e))

    def issubset(self, other: SubsetMask) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def is_full(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def __contains__(self, e: int) -> bool:
        return bool(self.bits >> e & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(mask_elements(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return mask_elements(self.bits)

    def __repr__(self) -> str:
        return f"SubsetMask({self.to_list()})"


def mask_elements(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def _check_capacity(n: int, capacity: int) -> None:
    if n > capacity:
        raise CapacityExceeded(f"{n} elements exceeds capacity {capacity}")


@dataclass(frozen=True, eq=False)
class FinitePoset:
    size: int
    leq: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    @cached_property
    def leq_t(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(v) for v in row) for row in self.leq.tolist())

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in range(self.size) if self.leq[x, a]) for a in range(self.size))

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in range(self.size) if self.leq[a, x]) for a in range(self.size))

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (lower, upper), sorted lexicographically."""
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        # x < z < y for some z kills the pair
        through = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~through
        return sorted((int(a), int(b)) for a, b in zip(*np.nonzero(cov)))

    def is_chain(self) -> bool:
        return bool(np.all(self.leq | self.leq.T))

    def chain_order(self) -> list[int]:
        """Elements listed bottom-up; raises NotAChain for non-chains."""
        if not self.is_chain():
            raise NotAChain("poset is not linearly ordered")
        return sorted(range(self.size), key=lambda a: int(self.leq[:, a].sum()))

    def to_lattice(self) -> FiniteLattice:
        return FiniteLattice.from_leq(self.leq, self.labels)


@dataclass(frozen=True, eq=False)
class FiniteMeetSemilattice(FinitePoset):
    meet: np.ndarray = field(default=None)
    top: int = 0
    bottom: int = 0

    @cached_property
    def meet_t(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.meet.tolist())

    def meet_of(self, elements: Iterable[int]) -> int:
        """Meet of a subset; the empty meet is the top."""
        acc = self.top
        for e in elements:
            acc = self.meet_t[acc][e]
        return acc

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.size == other.size
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.meet, other.meet)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class FiniteLattice(FiniteMeetSemilattice):
    join: np.ndarray = field(default=None)

    @cached_property
    def join_t(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.join.tolist())

    def join_of(self, elements: Iterable[int]) -> int:
        acc = self.bottom
        for e in elements:
            acc = self.join_t[acc][e]
        return acc

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return FiniteMeetSemilattice.__eq__(self, other) and np.array_equal(self.join, other.join)

    __hash__ = None

    def as_meet_semilattice(self) -> FiniteMeetSemilattice:
        return FiniteMeetSemilattice(self.size, self.leq, self.labels, self.meet, self.top, self.bottom)

    @classmethod
    def from_leq(cls, leq, labels: Optional[Sequence[str]] = None) -> FiniteLattice:
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        meet = _bound_table(leq, n)
        join = _bound_table(leq.T, n)
        if meet is None or join is None:
            raise NotALattice("some pair lacks a greatest lower or least upper bound")
        bottom = int(np.nonzero(leq.all(axis=1))[0][0])
        top = int(np.nonzero(leq.all(axis=0))[0][0])
        return cls(
            n,
            _frozen(leq),
            tuple(labels) if labels else None,
            _frozen(meet),
            top,
            bottom,
            _frozen(join),
        )

    def validate(self) -> None:
        """Full table scan of the lattice axioms; raises NotALattice."""
        n = self.size
        leq = self.leq
        if not np.all(np.diag(leq)):
            raise NotALattice("order not reflexive")
        if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
            raise NotALattice("order not antisymmetric")
        li = leq.astype(np.int64)
        if np.any(((li @ li) > 0) & ~leq):
            raise NotALattice("order not transitive")
        if not (leq[self.bottom].all() and leq[:, self.top].all()):
            raise NotALattice("bottom/top misplaced")
        for op in (self.meet, self.join):
            if not np.array_equal(op, op.T):
                raise NotALattice("operation not commutative")
            if not np.array_equal(op[np.arange(n), np.arange(n)], np.arange(n)):
                raise NotALattice("operation not idempotent")
            if not np.array_equal(_assoc_left(op), _assoc_right(op)):
                raise NotALattice("operation not associative")
        idx = np.arange(n)
        if not np.array_equal(self.meet[idx[:, None], self.join], np.broadcast_to(idx[:, None], (n, n))):
            raise NotALattice("absorption a∧(a∨b)=a fails")
        if not np.array_equal(self.join[idx[:, None], self.meet], np.broadcast_to(idx[:, None], (n, n))):
            raise NotALattice("absorption a∨(a∧b)=a fails")
        # a <= b iff a∧b = a
        if not np.array_equal(self.meet == idx[:, None], leq):
            raise NotALattice("meet table disagrees with order")


def _assoc_left(op: np.ndarray) -> np.ndarray:
    # (a*b)*c indexed [a, b, c]
    return op[op[:, :, None], np.arange(op.shape[0])[None, None, :]]


def _assoc_right(op: np.ndarray) -> np.ndarray:
    # a*(b*c) indexed [a, b, c]
    return op[np.arange(op.shape[0])[:, None, None], op[None, :, :]]


def _bound_table(leq: np.ndarray, n: int) -> Optional[np.ndarray]:
    """glb table for ``leq`` (pass ``leq.T`` for lub); None if some pair has none."""
    li = leq.astype(np.int64)
    down_size = li.sum(axis=0)
    common = li.T @ li  # common[a, b] = |down(a) & down(b)|
    out = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        lower = leq[:, a][:, None] & leq  # [g, b]: g <= a and g <= b
        hit = lower & (down_size[:, None] == common[a][None, :])
        counts = hit.sum(axis=0)
        if np.any(counts != 1):
            return None
        out[a] = hit.argmax(axis=0)
    return out


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    reach = np.eye(n, dtype=bool)
    for lo, hi in pairs:
        reach[lo, hi] = True
    for k in range(n):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    return reach


def poset_from_covers(
    n: int,
    covers: Iterable[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    capacity: int = DEFAULT_CAPACITY,
) -> FinitePoset:
    _check_capacity(n, capacity)
    seen = set()
    for pair in covers:
        if len(pair) != 2:
            raise ParseError(f"cover {pair!r} is not a pair")
        lo, hi = int(pair[0]), int(pair[1])
        if not (0 <= lo < n and 0 <= hi < n):
            raise ParseError(f"cover {pair!r} indexes outside 0..{n - 1}")
        if (lo, hi) in seen:
            raise DuplicateCover(f"cover {(lo, hi)} listed twice")
        if lo == hi:
            raise CyclicCovers(f"self-loop at {lo}")
        seen.add((lo, hi))
    if labels is not None and len(labels) != n:
        raise ParseError(f"{len(labels)} labels for {n} elements")
    reach = transitive_closure(n, seen)
    if np.any(reach & reach.T & ~np.eye(n, dtype=bool)):
        raise CyclicCovers("cover digraph has a cycle")
    return FinitePoset(n, _frozen(reach), tuple(labels) if labels else None)


def from_covers(n: int, covers, labels=None, capacity: int = DEFAULT_CAPACITY) -> FiniteLattice:
    """Build a lattice from its cover pairs.

    >>> from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).join[1, 2]
    3
    """
    if n < 1:
        raise NotALattice("a lattice needs at least one element")
    return poset_from_covers(n, covers, labels, capacity).to_lattice()


def chain(n: int) -> FiniteLattice:
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def product(a: FiniteLattice, b: FiniteLattice, capacity: int = DEFAULT_CAPACITY) -> FiniteLattice:
    """Componentwise product; element ``(i, j)`` has index ``i * |b| + j``."""
    na, nb = a.size, b.size
    _check_capacity(na * nb, capacity)
    n = na * nb
    leq = (a.leq[:, None, :, None] & b.leq[None, :, None, :]).reshape(n, n)
    meet = (a.meet[:, None, :, None] * nb + b.meet[None, :, None, :]).reshape(n, n)
    join = (a.join[:, None, :, None] * nb + b.join[None, :, None, :]).reshape(n, n)
    labels = tuple(f"({a.label(i)},{b.label(j)})" for i in range(na) for j in range(nb))
    return FiniteLattice(
        n,
        _frozen(leq),
        labels,
        _frozen(meet),
        a.top * nb + b.top,
        a.bottom * nb + b.bottom,
        _frozen(join),
    )


def lex_product(a: FinitePoset, b: FinitePoset, capacity: int = DEFAULT_CAPACITY) -> FiniteLattice:
    """Lexicographic product of two chains, as a chain indexed bottom-up."""
    order_a, order_b = a.chain_order(), b.chain_order()
    nb = len(order_b)
    n = len(order_a) * nb
    _check_capacity(n, capacity)
    out = chain(n)
    labels = tuple(f"{a.label(x)}⋉{b.label(y)}" for x in order_a for y in order_b)
    return FiniteLattice(n, out.leq, labels, out.meet, out.top, out.bottom, out.join)


def _extend(p: FinitePoset, at_top: bool, capacity: int):
    n = p.size + 1
    _check_capacity(n, capacity)
    leq = np.zeros((n, n), dtype=bool)
    if at_top:
        leq[: n - 1, : n - 1] = p.leq
        leq[:, n - 1] = True
        new_label = "⊤'"
        labels = (tuple(p.label(i) for i in range(p.size)) + (new_label,)) if p.labels else None
    else:
        leq[1:, 1:] = p.leq
        leq[0, :] = True
        labels = (("⊥'",) + tuple(p.label(i) for i in range(p.size))) if p.labels else None
    try:
        return FiniteLattice.from_leq(leq, labels)
    except NotALattice:
        return FinitePoset(n, _frozen(leq), labels)


def add_top(p: FinitePoset, capacity: int = DEFAULT_CAPACITY):
    """Append a new maximum with index ``n``.

    Returns a FiniteLattice when the result is one, otherwise a FinitePoset.
    """
    return _extend(p, True, capacity)


def add_bottom(p: FinitePoset, capacity: int = DEFAULT_CAPACITY):
    """Prepend a new minimum with index 0, shifting the old indices up by one."""
    return _extend(p, False, capacity)


def antichain(n: int) -> FinitePoset:
    return poset_from_covers(n, [])


# -- JSON cover-list format ----------------------------------------------------


def to_json_dict(p: FinitePoset) -> dict:
    out = {"n": p.size, "covers": [list(c) for c in p.covers()]}
    if p.labels:
        out["labels"] = list(p.labels)
    return out


def dumps(p: FinitePoset) -> str:
    return json.dumps(to_json_dict(p), sort_keys=True)


def from_json_dict(data: dict, capacity: int = DEFAULT_CAPACITY) -> FiniteLattice:
    if not isinstance(data, dict) or "n" not in data or "covers" not in data:
        raise ParseError('lattice JSON needs "n" and "covers"')
    n = data["n"]
    covers = data["covers"]
    if not isinstance(n, int) or isinstance(n, bool) or not isinstance(covers, list):
        raise ParseError('"n" must be an integer and "covers" a list')
    labels = data.get("labels")
    if labels is not None and not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
        raise ParseError('"labels" must be a list of strings')
    for c in covers:
        if not (isinstance(c, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in c)):
            raise ParseError(f"malformed cover {c!r}")
    return from_covers(n, covers, labels, capacity)


def loads(text: str, capacity: int = DEFAULT_CAPACITY) -> FiniteLattice:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return from_json_dict(data, capacity)


# -- enumeration ---------------------------------------------------------------


def _small_bounds(n: int, down: list[int], up: list[int]):
    """glb/lub tables from down/up bitmasks, or None if not a lattice."""
    by_down = {m: i for i, m in enumerate(down)}
    by_up = {m: i for i, m in enumerate(up)}
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            g = by_down.get(down[a] & down[b])
            l = by_up.get(up[a] & up[b])
            if g is None or l is None:
                return None
            meet[a][b] = meet[b][a] = g
            join[a][b] = join[b][a] = l
    return meet, join


def _naturally_labeled_lattices(n: int) -> Iterator[list[list[bool]]]:
    """Order matrices of lattices with 0 bottom, n-1 top and i < j whenever i below j."""
    if n == 1:
        yield [[True]]
        return
    middle = list(range(1, n - 1))
    pairs = list(itertools.combinations(middle, 2))
    for bits in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if bits >> k & 1}
        # transitivity among the middle elements
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel for i, j, k in itertools.combinations(middle, 3)):
            continue
        leq = [[i == j for j in range(n)] for i in range(n)]
        for x in range(n):
            leq[0][x] = True
            leq[x][n - 1] = True
        for i, j in rel:
            leq[i][j] = True
        down = [sum(1 << x for x in range(n) if leq[x][a]) for a in range(n)]
        up = [sum(1 << x for x in range(n) if leq[a][x]) for a in range(n)]
        if _small_bounds(n, down, up) is not None:
            yield leq


def _leq_key(leq: Sequence[Sequence[bool]], n: int) -> int:
    key = 0
    for i in range(n):
        for j in range(n):
            if leq[i][j]:
                key |= 1 << (i * n + j)
    return key


def _key_to_leq(key: int, n: int) -> list[list[bool]]:
    return [[bool(key >> (i * n + j) & 1) for j in range(n)] for i in range(n)]


def labeled_lattice_keys(n: int) -> list[int]:
    """Sorted order-matrix keys of every labeled lattice on ``n`` elements."""
    if not 1 <= n <= ENUMERATION_BOUND:
        raise BoundExceeded(f"enumeration supports 1 <= n <= {ENUMERATION_BOUND}, got {n}")
    return _labeled_keys_cached(n)


_KEY_CACHE: dict[int, list[int]] = {}


def _labeled_keys_cached(n: int) -> list[int]:
    if n not in _KEY_CACHE:
        keys = set()
        perms = list(itertools.permutations(range(n)))
        for leq in _naturally_labeled_lattices(n):
            for perm in perms:
                # element i is relabeled perm[i]
                key = 0
                for i in range(n):
                    pi = perm[i] * n
                    row = leq[i]
                    for j in range(n):
                        if row[j]:
                            key |= 1 << (pi + perm[j])
                keys.add(key)
        _KEY_CACHE[n] = sorted(keys)
    return _KEY_CACHE[n]


def lattice_from_key(key: int, n: int) -> FiniteLattice:
    leq = _key_to_leq(key, n)
    down = [sum(1 << x for x in range(n) if leq[x][a]) for a in range(n)]
    up = [sum(1 << x for x in range(n) if leq[a][x]) for a in range(n)]
    meet, join = _small_bounds(n, down, up)
    bottom = next(a for a in range(n) if down[a] == 1 << a)
    top = next(a for a in range(n) if up[a] == 1 << a)
    return FiniteLattice(
        n,
        _frozen(np.array(leq, dtype=bool)),
        None,
        _frozen(np.array(meet, dtype=np.int64)),
        top,
        bottom,
        _frozen(np.array(join, dtype=np.int64)),
    )


def enumerate_lattices(n: int) -> Iterator[FiniteLattice]:
    """Every labeled lattice on ``n <= 6`` elements, each exactly once."""
    for key in labeled_lattice_keys(n):
        yield lattice_from_key(key, n)


def enumerate_meet_semilattices(n: int) -> Iterator[FiniteMeetSemilattice]:
    """Every labeled finite meet-semilattice with a maximum on ``n <= 6`` elements.

    A finite meet-semilattice with a top already has all joins, so the carriers
    coincide with the lattice corpus; only the signature differs.
    """
    for lat in enumerate_lattices(n):
        yield lat.as_meet_semilattice()


def canonical_key(p: FinitePoset) -> int:
    """Smallest order-matrix key over all relabelings (isomorphism invariant)."""
    n = p.size
    leq = p.leq_t
    best = None
    for perm in itertools.permutations(range(n)):
        key = 0
        for i in range(n):
            for j in range(n):
                if leq[i][j]:
                    key |= 1 << (perm[i] * n + perm[j])
        if best is None or key < best:
            best = key
    return best
