"""Complete-sublattice closure on K x {0,1} over block descriptions.

Arbitrary meets reduce to binary ones: first coordinates are well ordered, so
the minimum is attained, and the second coordinate is finite.  A join of an
infinite family either has an attained first coordinate (then it is a binary
join) or its first coordinate is a limit λ; in that case it equals (λ, 0) or
(λ, 1), obtained from the limit of the family's bit-0 or bit-1 part and one
more binary join.  So one round of the fixpoint adds, per bit, the limit
points of the infinite blocks, plus the binary cross-bit images:

    meets: (k, 1) ∧ (k', 0) = (k, 0) for k <= k'   -> bit-1 part below max of bit 0
    joins: (k, 0) ∨ (k', 1) = (k, 1) for k >= k'   -> bit-0 part above min of bit 1

Same-bit pairs lie in a chain and add nothing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from ..config import ClosureConfig, LATTICE
from ..errors import CertificateInvalid, NonTermination, NotASublattice, NotProper
from . import desc as D
from .elements import TOP, ZERO, Family, OrdK, SymElem, bottom, top

DEFAULT_MAX_ROUNDS = 1000


def _round(family: Family, s0, s1, cfg: ClosureConfig):
    """One saturation step; returns the raw additions per bit with a reason tag.

    Extremes and limit points go in first, so that in the complete modes every
    nonempty part has an attained maximum before the binary images are taken.
    """
    adds = {0: [], 1: []}
    if cfg.forces_top:
        adds[1].append(("empty meet", D.Point(TOP, 1)))
    if cfg.forces_bottom:
        adds[0].append(("empty join", D.Point(ZERO, 0)))
    if cfg.respect_joins and cfg.takes_limits:
        for bit, part in ((0, s0), (1, s1)):
            for lim in sorted(D.limits(family, part)):
                adds[bit].append(("limit join", D.Point(lim, bit)))
    s0 = D.normalize_bit(family, list(s0) + [b for _, b in adds[0]], 0)
    s1 = D.normalize_bit(family, list(s1) + [b for _, b in adds[1]], 1)
    if s0 and s1:
        mx, sup = D.maximum(family, s0)
        if mx is not None:
            hi = None if mx.top else mx.succ()
        else:
            hi = sup
        for b in D.restrict(family, s1, ZERO, hi, 0):
            adds[0].append(("binary meet", b))
        if cfg.respect_joins:
            for b in D.restrict(family, s0, D.minimum(s1), None, 1):
                adds[1].append(("binary join", b))
    return adds


def complete_closure(d: D.SetDesc, cfg: ClosureConfig = LATTICE, max_rounds: int = DEFAULT_MAX_ROUNDS) -> D.Positive:
    """Least substructure of K x {0,1} containing ``d``, as a normalized description."""
    d = D.to_positive(d)
    family = d.family
    s0, s1 = d.bit_blocks(0), d.bit_blocks(1)
    for _ in range(max_rounds):
        adds = _round(family, s0, s1, cfg)
        n0 = D.normalize_bit(family, list(s0) + [b for _, b in adds[0]], 0)
        n1 = D.normalize_bit(family, list(s1) + [b for _, b in adds[1]], 1)
        if n0 == s0 and n1 == s1:
            return D.Positive(family, s0 + s1)
        s0, s1 = n0, n1
    raise NonTermination(f"no fixpoint within {max_rounds} rounds")


@dataclass(frozen=True)
class Forcing:
    """Why ``element`` has to belong to any substructure containing the rest."""

    element: SymElem
    reason: str
    witnesses: tuple = ()

    def to_json(self) -> dict:
        return {
            "element": D.elem_to_json(self.element),
            "reason": self.reason,
            "witnesses": [repr(w) for w in self.witnesses],
        }


@dataclass(frozen=True)
class Closedness:
    closed: bool
    forcing: Optional[Forcing] = None

    def __bool__(self) -> bool:
        return self.closed


def _candidates_above(k: OrdK, avoid: set, limit: int):
    """Some k' > k not in ``avoid`` (search a short successor run)."""
    if k.top:
        return None
    cur = k.succ()
    for _ in range(limit + 1):
        if cur not in avoid:
            return cur
        cur = cur.succ()
    return None


def _candidates_below(k: OrdK, avoid: set, limit: int):
    cur = ZERO
    for _ in range(limit + 1):
        if cur >= k:
            return None
        if cur not in avoid:
            return cur
        cur = cur.succ()
    return None


def _forced_in_cofinite(d: D.CoFinite, e: SymElem, cfg: ClosureConfig) -> Optional[Forcing]:
    family = d.family
    if e == top(family) and cfg.forces_top:
        return Forcing(e, "empty meet")
    if e == bottom(family) and cfg.forces_bottom:
        return Forcing(e, "empty join")
    out = {0: {x.k for x in d.excluded if x.bit == 0}, 1: {x.k for x in d.excluded if x.bit == 1}}
    n = len(d.excluded)
    k = e.k
    if e.bit == 0 and k not in out[1]:
        above = _candidates_above(k, out[0], n)
        if above is not None:
            return Forcing(e, "binary meet", (SymElem(family, k, 1), SymElem(family, above, 0)))
    if e.bit == 1 and cfg.respect_joins and k not in out[0]:
        below = _candidates_below(k, out[1], n)
        if below is not None:
            return Forcing(e, "binary join", (SymElem(family, k, 0), SymElem(family, below, 1)))
    if cfg.respect_joins and cfg.takes_limits and k.is_limit:
        # F is finite, so a tail of the family converging to k avoids it
        if k.top and family is Family.OMEGA_SQ:
            start = 1 + max([x.q for x in out[e.bit] if not x.top] + [0])
            tail = D.ZeroColTail(start, e.bit)
        else:
            row = 0 if k.top else k.q - 1
            start = 1 + max([x.r for x in out[e.bit] if not x.top and x.q == row] + [0])
            tail = D.RowTail(row, start, e.bit)
        return Forcing(e, "limit join", (tail,))
    return None


def is_complete_sublattice(d: D.SetDesc, cfg: ClosureConfig = LATTICE, max_rounds: int = DEFAULT_MAX_ROUNDS) -> Closedness:
    if isinstance(d, D.CoFinite):
        for e in d.sorted_excluded():
            f = _forced_in_cofinite(d, e, cfg)
            if f is not None:
                return Closedness(False, f)
        return Closedness(True)
    closure = complete_closure(d, cfg, max_rounds)
    if closure == d:
        return Closedness(True)
    s0, s1 = d.bit_blocks(0), d.bit_blocks(1)
    for bit, items in _round(d.family, s0, s1, cfg).items():
        for reason, b in items:
            for e in D.sample_members(D.Positive.of(d.family, [b]), 3):
                if e not in d:
                    return Closedness(False, Forcing(e, reason))
    return Closedness(False, Forcing(_first_new(d, closure), "closure"))


def _first_new(d: D.Positive, closure: D.Positive) -> SymElem:
    for bound in (5, 25, 125):
        for e in D.window(d.family, bound):
            if e in closure and e not in d:
                return e
    raise AssertionError("closure grew but no new element found")


MAXIMALITY_EXCLUSION_CAP = 12


def is_maximal_complete_sublattice(d: D.CoFinite, cfg: ClosureConfig = LATTICE) -> bool:
    """A proper co-finite complete sublattice is maximal iff no co-finite set
    excluding a nonempty proper part of its exclusions is closed."""
    if not isinstance(d, D.CoFinite):
        raise TypeError("maximality is decided for co-finite descriptions")
    if not d.excluded:
        raise NotProper("the whole lattice is not a proper sublattice")
    if not is_complete_sublattice(d, cfg):
        raise NotASublattice(f"{d!r} is not a complete sublattice")
    items = d.sorted_excluded()
    if len(items) > MAXIMALITY_EXCLUSION_CAP:
        raise ValueError(f"more than {MAXIMALITY_EXCLUSION_CAP} exclusions")
    for size in range(1, len(items)):
        for sub in itertools.combinations(items, size):
            if is_complete_sublattice(D.CoFinite.of(d.family, sub), cfg):
                return False
    return True


@dataclass(frozen=True)
class SymCertificate:
    """``<X> != L`` and ``<X, a> = L``: ``a`` is a relative generator."""

    element: SymElem
    generators: D.Positive
    closure: D.Positive

    def to_json(self) -> dict:
        return {
            "kind": "relative-generator-witness",
            "element": D.elem_to_json(self.element),
            "X": D.desc_to_json(self.generators),
            "closure_of_X": D.desc_to_json(self.closure),
        }


def relative_generator_certificate(
    a: SymElem, x: D.SetDesc, cfg: ClosureConfig = LATTICE, max_rounds: int = DEFAULT_MAX_ROUNDS
) -> SymCertificate:
    x = D.to_positive(x)
    whole = D.whole(x.family)
    closed = complete_closure(x, cfg, max_rounds)
    if closed == whole:
        raise CertificateInvalid(f"<X> is already the whole lattice, so X does not witness {a!r}")
    if complete_closure(x.union([a]), cfg, max_rounds) != whole:
        raise CertificateInvalid(f"<X, {a!r}> is not the whole lattice")
    return SymCertificate(a, x, closed)


def generates_everything(x: D.SetDesc, cfg: ClosureConfig = LATTICE) -> bool:
    return complete_closure(x, cfg) == D.whole(x.family)
