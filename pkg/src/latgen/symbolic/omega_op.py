"""The single ω-ary operation f(x_0, x_1, ...) = ⋁_i (x_{2i} ∧ x_{2i+1}).

Binary meets and finite joins are recovered from f:

    x ∧ y            = f(x, y, x, y, ...)
    x_0 ∨ ... ∨ x_k  = f(x_0, x_0, x_1, x_1, ..., x_k, x_k, x_k, ...)

Sequences are eventually periodic, so the infinite join ranges over finitely
many distinct pair-meets and is evaluated exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Sequence, Union

from ..finite import FiniteLattice
from .elements import Family, sym_join, sym_meet


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("the period must be nonempty")

    def __getitem__(self, i: int):
        if i < 0:
            raise IndexError(i)
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def pairs(self) -> list[tuple[Any, Any]]:
        """Every distinct (x_{2i}, x_{2i+1}) occurs among the first pairs
        covering the prefix and two full periods."""
        n = len(self.prefix) + 2 * len(self.period) + 1
        n += n % 2
        return [(self[2 * i], self[2 * i + 1]) for i in range(n // 2)]


def EventuallyConstantSeq(prefix: Sequence, tail_value) -> EventuallyPeriodicSeq:
    return EventuallyPeriodicSeq(tuple(prefix), (tail_value,))


Ops = tuple[Callable[[Any, Any], Any], Callable[[Any, Any], Any]]


def _ops(lattice: Union[FiniteLattice, Family, str]) -> Ops:
    if isinstance(lattice, FiniteLattice):
        m, j = lattice.meet_t, lattice.join_t
        return (lambda x, y: m[x][y]), (lambda x, y: j[x][y])
    Family.parse(lattice)
    return sym_meet, sym_join


def omega_op_eval(seq: EventuallyPeriodicSeq, lattice) -> Any:
    meet, join = _ops(lattice)
    return reduce(join, (meet(x, y) for x, y in seq.pairs()))


def encode_meet(x, y) -> EventuallyPeriodicSeq:
    return EventuallyPeriodicSeq((), (x, y))


def encode_join(xs: Sequence) -> EventuallyPeriodicSeq:
    if not xs:
        raise ValueError("at least one element")
    doubled = [x for x in xs for _ in (0, 1)]
    return EventuallyConstantSeq(doubled, xs[-1])


def fold_meet(lattice, xs: Sequence):
    return reduce(_ops(lattice)[0], xs)


def fold_join(lattice, xs: Sequence):
    return reduce(_ops(lattice)[1], xs)
