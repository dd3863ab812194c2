"""Generated substructures, non-generators, indispensables and the Frattini set.

Two exact engines are provided:

* ``bruteforce`` closes every subset of the carrier (``n <= 16``) and reads the
  definitions off the resulting table;
* ``search`` works with complements of closed sets.  ``F`` is *co-closed* when
  ``L - F`` is a substructure, i.e. no element of ``F`` is forced by two
  elements outside ``F`` (nor by an empty operation).  Maximal closed sets
  avoiding ``a`` are the complements of minimal co-closed sets containing
  ``a``, which a small branching search enumerates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .config import ClosureConfig, LATTICE
from .errors import BoundExceeded
from .finite import FiniteLattice, FiniteMeetSemilattice, SubsetMask, mask_elements

BRUTEFORCE_BOUND = 16

Structure = Union[FiniteLattice, FiniteMeetSemilattice]
MaskLike = Union[SubsetMask, int, Iterable[int]]


class CertKind(enum.Enum):
    RELATIVE_GENERATOR_WITNESS = "relative-generator-witness"
    MEET_REDUCTION = "meet-reduction"
    COMPLEMENT_CLOSED = "complement-closed"
    MAXIMALITY_WITNESS = "maximality-witness"


@dataclass(frozen=True)
class Certificate:
    kind: CertKind
    element: Optional[int]
    subset: SubsetMask

    def check(self, s: Structure, cfg: ClosureConfig = LATTICE) -> bool:
        full = (1 << s.size) - 1
        x = self.subset.bits
        if self.kind is CertKind.RELATIVE_GENERATOR_WITNESS:
            a = 1 << self.element
            return _close(s, x | a, cfg) == full and _close(s, x, cfg) != full
        if self.kind is CertKind.MEET_REDUCTION:
            if self.element in self.subset:
                return False
            if not self.subset.bits and not cfg.include_empty_meet:
                return False
            return s.meet_of(self.subset) == self.element
        if self.kind is CertKind.COMPLEMENT_CLOSED:
            rest = full & ~(1 << self.element)
            return x == rest and _close(s, rest, cfg) == rest
        if self.kind is CertKind.MAXIMALITY_WITNESS:
            if x == full or _close(s, x, cfg) != x:
                return False
            return all(_close(s, x | 1 << e, cfg) == full for e in mask_elements(full & ~x))
        raise ValueError(self.kind)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "element": self.element, "subset": self.subset.to_list()}


@dataclass
class GeneratorReport:
    size: int
    gamma: SubsetMask
    phi: SubsetMask
    indispensables: SubsetMask
    relative_generators: SubsetMask
    maximal_substructures: list[SubsetMask]
    gamma_is_substructure: bool
    gamma_equals_phi: bool
    witnesses: dict[int, Certificate] = field(default_factory=dict)
    method: str = "bruteforce"

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "method": self.method,
            "gamma": self.gamma.to_list(),
            "phi": self.phi.to_list(),
            "indispensables": self.indispensables.to_list(),
            "relative_generators": self.relative_generators.to_list(),
            "maximal_substructures": sorted(m.to_list() for m in self.maximal_substructures),
            "gamma_is_substructure": self.gamma_is_substructure,
            "gamma_equals_phi": self.gamma_equals_phi,
            "witnesses": {str(e): self.witnesses[e].to_json() for e in sorted(self.witnesses)},
        }


def _bits(s: Structure, x: MaskLike) -> int:
    if isinstance(x, SubsetMask):
        if x.width != s.size:
            raise ValueError(f"mask width {x.width} does not match carrier size {s.size}")
        return x.bits
    if isinstance(x, int):
        if x < 0 or x >> s.size:
            raise ValueError("mask outside carrier")
        return x
    return SubsetMask.of(s.size, x).bits


def _tables(s: Structure, cfg: ClosureConfig):
    meet = s.meet_t
    if cfg.respect_joins:
        if not isinstance(s, FiniteLattice):
            raise TypeError("join-respecting closure needs a FiniteLattice")
        return meet, s.join_t
    return meet, None


def _saturate(meet, join, closed: int, new: list[int], bits: int) -> int:
    """Close ``bits`` given that the part ``closed`` is already closed."""
    done = mask_elements(closed)
    queue = list(new)
    while queue:
        x = queue.pop()
        mrow = meet[x]
        jrow = join[x] if join is not None else None
        for y in done:
            z = mrow[y]
            if not bits >> z & 1:
                bits |= 1 << z
                queue.append(z)
            if jrow is not None:
                z = jrow[y]
                if not bits >> z & 1:
                    bits |= 1 << z
                    queue.append(z)
        done.append(x)
    return bits


def _seed(s: Structure, cfg: ClosureConfig, bits: int) -> int:
    if cfg.forces_top:
        bits |= 1 << s.top
    if cfg.forces_bottom:
        bits |= 1 << s.bottom
    return bits


def _close(s: Structure, bits: int, cfg: ClosureConfig) -> int:
    meet, join = _tables(s, cfg)
    bits = _seed(s, cfg, bits)
    return _saturate(meet, join, 0, mask_elements(bits), bits)


def generate(s: Structure, x: MaskLike, cfg: ClosureConfig = LATTICE) -> SubsetMask:
    """Least substructure containing ``x`` (completeness is moot on finite carriers)."""
    return SubsetMask(s.size, _close(s, _bits(s, x), cfg))


def is_substructure(s: Structure, c: MaskLike, cfg: ClosureConfig = LATTICE) -> bool:
    bits = _bits(s, c)
    return _close(s, bits, cfg) == bits


def finitary_sublattice_closure(s: FiniteLattice, x: MaskLike) -> SubsetMask:
    """Closure under binary meets and joins only, no extremes added."""
    return generate(s, x, ClosureConfig(True, False, False))


def _cache(s: Structure) -> dict:
    return s.__dict__.setdefault("_latgen_cache", {})


def _check_bound(s: Structure) -> None:
    if s.size > BRUTEFORCE_BOUND:
        raise BoundExceeded(f"brute force limited to {BRUTEFORCE_BOUND} elements, got {s.size}")


def all_closures(s: Structure, cfg: ClosureConfig = LATTICE) -> list[int]:
    """``table[X] == <X>`` for every subset bitmask ``X``."""
    _check_bound(s)
    cache = _cache(s)
    key = ("closures", cfg)
    if key not in cache:
        meet, join = _tables(s, cfg)
        n = s.size
        table = [0] * (1 << n)
        table[0] = _close(s, 0, cfg)
        for x in range(1, 1 << n):
            low = x & -x
            base = table[x ^ low]
            if base >> (low.bit_length() - 1) & 1:
                table[x] = base
            else:
                table[x] = _saturate(meet, join, base, [low.bit_length() - 1], base | low)
        cache[key] = table
    return cache[key]


_POPCOUNT_ORDER: dict[int, list[int]] = {}


def _popcount_order(n: int) -> list[int]:
    if n not in _POPCOUNT_ORDER:
        _POPCOUNT_ORDER[n] = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    return _POPCOUNT_ORDER[n]


def non_generators_bruteforce(s: Structure, cfg: ClosureConfig = LATTICE) -> tuple[SubsetMask, dict[int, Certificate]]:
    """Non-generators straight from the definition, scanning every ``X``.

    Subsets are visited by increasing size, so each relative generator comes
    with a smallest witness ``X``.
    """
    table = all_closures(s, cfg)
    n = s.size
    full = (1 << n) - 1
    gamma = 0
    witnesses = {}
    order = _popcount_order(n)
    for a in range(n):
        abit = 1 << a
        for x in order:
            if x & abit:
                continue
            if table[x | abit] == full and table[x] != full:
                witnesses[a] = Certificate(CertKind.RELATIVE_GENERATOR_WITNESS, a, SubsetMask(n, x))
                break
        else:
            gamma |= abit
    return SubsetMask(n, gamma), witnesses


def indispensable_elements(s: Structure, cfg: ClosureConfig = LATTICE, cross_check: bool = True) -> SubsetMask:
    """Elements whose complement is a substructure.

    With ``cross_check`` the set is recomputed as the elements lying in every
    generating set, and the two routes must agree.
    """
    n = s.size
    full = (1 << n) - 1
    by_complement = 0
    for a in range(n):
        rest = full & ~(1 << a)
        if _close(s, rest, cfg) == rest:
            by_complement |= 1 << a
    if cross_check:
        table = all_closures(s, cfg)
        in_every = full
        for x in range(1 << n):
            if table[x] == full:
                in_every &= x
        if in_every != by_complement:
            raise AssertionError(
                f"indispensable routes disagree: {mask_elements(by_complement)} vs {mask_elements(in_every)}"
            )
    return SubsetMask(n, by_complement)


def meet_reducible_elements(
    s: FiniteMeetSemilattice, cfg: ClosureConfig = LATTICE
) -> tuple[SubsetMask, dict[int, Certificate]]:
    """Elements equal to the meet of a family avoiding them.

    The canonical witness is the set of all elements strictly above ``a``; the
    top qualifies through the empty family only under ``include_empty_meet``.
    """
    n = s.size
    out = 0
    witnesses = {}
    for a in range(n):
        above = s.up_masks[a] & ~(1 << a)
        if not above and not cfg.include_empty_meet:
            continue
        if s.meet_of(mask_elements(above)) == a:
            out |= 1 << a
            witnesses[a] = Certificate(CertKind.MEET_REDUCTION, a, SubsetMask(n, above))
    return SubsetMask(n, out), witnesses


def _maximal_bruteforce(s: Structure, cfg: ClosureConfig) -> list[int]:
    table = all_closures(s, cfg)
    full = (1 << s.size) - 1
    out = []
    for m in sorted(set(table)):
        if m == full:
            continue
        if all(table[m | 1 << e] == full for e in mask_elements(full & ~m)):
            out.append(m)
    return out


# -- co-closed search ------------------------------------------------------------


def _forcing_pairs(s: Structure, cfg: ClosureConfig) -> list[list[int]]:
    """For each e, bitmasks {x, y} (x, y != e) with x∧y = e or x∨y = e."""
    meet, join = _tables(s, cfg)
    n = s.size
    pairs = [set() for _ in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            for table in (meet, join):
                if table is None:
                    continue
                e = table[x][y]
                if e != x and e != y:
                    pairs[e].add(1 << x | 1 << y)
    return [sorted(p) for p in pairs]


def _minimal(sets: Iterable[int]) -> list[int]:
    out = []
    for f in sorted(set(sets), key=lambda m: (m.bit_count(), m)):
        if not any(g & f == g for g in out):
            out.append(f)
    return out


def _coclosed_containing(pairs: list[list[int]], forced: int, a: int) -> list[int]:
    """Minimal co-closed sets containing ``a``."""
    if forced >> a & 1:
        return []
    found = []

    def rec(f: int, forbidden: int) -> None:
        for e in mask_elements(f):
            for p in pairs[e]:
                if f & p:
                    continue
                free = p & ~forbidden
                if not free:
                    return
                if free != p:
                    rec(f | free, forbidden)
                    return
                x = p & -p
                rec(f | x, forbidden)
                rec(f | (p ^ x), forbidden | x)
                return
        found.append(f)

    rec(1 << a, forced)
    return _minimal(found)


def _search(s: Structure, cfg: ClosureConfig):
    cache = _cache(s)
    key = ("search", cfg)
    if key not in cache:
        pairs = _forcing_pairs(s, cfg)
        forced = _seed(s, cfg, 0)
        per_element = [_coclosed_containing(pairs, forced, a) for a in range(s.size)]
        cache[key] = per_element
    return cache[key]


def _maximal_search(s: Structure, cfg: ClosureConfig) -> list[int]:
    full = (1 << s.size) - 1
    per_element = _search(s, cfg)
    minimal = _minimal(f for fs in per_element for f in fs)
    return sorted(full & ~f for f in minimal)


def non_generators_search(s: Structure, cfg: ClosureConfig = LATTICE) -> tuple[SubsetMask, dict[int, Certificate]]:
    """Non-generators via maximal closed sets avoiding each element.

    ``a`` is a relative generator iff some closed ``C`` avoiding ``a`` has
    ``<C, a> = L``; by monotonicity it suffices to try the maximal such ``C``.
    """
    n = s.size
    full = (1 << n) - 1
    gamma = 0
    witnesses = {}
    for a, fs in enumerate(_search(s, cfg)):
        for f in fs:
            c = full & ~f
            if _close(s, c | 1 << a, cfg) == full:
                witnesses[a] = Certificate(CertKind.RELATIVE_GENERATOR_WITNESS, a, SubsetMask(n, c))
                break
        else:
            gamma |= 1 << a
    return SubsetMask(n, gamma), witnesses


def _pick(method: str, s: Structure) -> str:
    if method == "auto":
        return "bruteforce" if s.size <= BRUTEFORCE_BOUND else "search"
    if method not in ("bruteforce", "search"):
        raise ValueError(f"unknown method {method!r}")
    return method


def maximal_proper_substructures(s: Structure, cfg: ClosureConfig = LATTICE, method: str = "bruteforce") -> list[SubsetMask]:
    method = _pick(method, s)
    found = _maximal_bruteforce(s, cfg) if method == "bruteforce" else _maximal_search(s, cfg)
    return [SubsetMask(s.size, m) for m in found]


def frattini(s: Structure, cfg: ClosureConfig = LATTICE, method: str = "bruteforce") -> SubsetMask:
    """Intersection of the maximal proper substructures; everything if there are none."""
    phi = (1 << s.size) - 1
    for m in maximal_proper_substructures(s, cfg, method):
        phi &= m.bits
    return SubsetMask(s.size, phi)


def analyze(s: Structure, cfg: ClosureConfig = LATTICE, method: str = "auto") -> GeneratorReport:
    method = _pick(method, s)
    n = s.size
    full = (1 << n) - 1
    if method == "bruteforce":
        gamma, witnesses = non_generators_bruteforce(s, cfg)
    else:
        gamma, witnesses = non_generators_search(s, cfg)
    maximal = maximal_proper_substructures(s, cfg, method)
    phi = full
    for m in maximal:
        phi &= m.bits
    indis = indispensable_elements(s, cfg, cross_check=method == "bruteforce")
    for a in indis:
        witnesses[a] = Certificate(CertKind.COMPLEMENT_CLOSED, a, SubsetMask(n, full & ~(1 << a)))
    if not cfg.respect_joins:
        _, reductions = meet_reducible_elements(s, cfg)
        for a in gamma:
            if a in reductions:
                witnesses[a] = reductions[a]
    return GeneratorReport(
        size=n,
        gamma=gamma,
        phi=SubsetMask(n, phi),
        indispensables=indis,
        relative_generators=gamma.complement(),
        maximal_substructures=maximal,
        gamma_is_substructure=_close(s, gamma.bits, cfg) == gamma.bits,
        gamma_equals_phi=gamma.bits == phi,
        witnesses=witnesses,
        method=method,
    )
