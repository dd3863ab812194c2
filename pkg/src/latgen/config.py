from __future__ import annotations

import enum
from dataclasses import dataclass


class Completeness(enum.Enum):
    FINITARY = "finitary"
    COUNTABLE = "countable"
    # binary meets plus countable joins only
    JOIN_COMPLETE = "join-complete"


@dataclass(frozen=True)
class ClosureConfig:
    """Which operations a substructure has to be closed under.

    ``include_empty_meet`` makes every closed set contain the top (the meet of
    the empty family); ``include_empty_join`` does the same for the bottom and
    is ignored when joins are not part of the signature.
    """

    respect_joins: bool = True
    include_empty_meet: bool = True
    include_empty_join: bool = True
    completeness: Completeness = Completeness.COUNTABLE

    @property
    def forces_top(self) -> bool:
        return self.include_empty_meet

    @property
    def forces_bottom(self) -> bool:
        return self.respect_joins and self.include_empty_join

    @property
    def takes_limits(self) -> bool:
        return self.completeness is not Completeness.FINITARY

    @classmethod
    def lattice(cls, conventions: str = "standard", completeness: Completeness = Completeness.COUNTABLE):
        on = _conventions(conventions)
        return cls(True, on, on, completeness)

    @classmethod
    def semilattice(cls, conventions: str = "standard", completeness: Completeness = Completeness.COUNTABLE):
        on = _conventions(conventions)
        return cls(False, on, False, completeness)

    def with_conventions(self, on: bool) -> ClosureConfig:
        return ClosureConfig(self.respect_joins, on, on and self.respect_joins, self.completeness)


def _conventions(name: str) -> bool:
    if name == "standard":
        return True
    if name == "none":
        return False
    raise ValueError(f"unknown conventions {name!r}")


LATTICE = ClosureConfig.lattice()
SEMILATTICE = ClosureConfig.semilattice()
