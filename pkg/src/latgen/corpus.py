"""Corpus-level checks over the labeled finite structures.

Every structure is analyzed by brute force; the counters record violations of
Γ = Φ, of Γ being a substructure, of the non-generator / meet-reducible
equivalence and of the indispensable-or-non-generator dichotomy.
"""
from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .closure import analyze, finitary_sublattice_closure, meet_reducible_elements
from .config import LATTICE, SEMILATTICE, ClosureConfig
from .finite import FiniteLattice, FiniteMeetSemilattice, enumerate_lattices, labeled_lattice_keys, lattice_from_key

SIGNATURES = ("lattice", "semilattice")


@dataclass
class CorpusStats:
    signature: str
    sizes: list = field(default_factory=list)
    structures: int = 0
    gamma_equals_phi: int = 0
    gamma_not_substructure: int = 0
    gamma_not_finitary_closed: int = 0
    oracle_mismatches: int = 0
    dichotomy_violations: int = 0
    # lattices only: structures with an element neither indispensable nor a non-generator
    mixed_structures: int = 0
    examples: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def violations(self) -> int:
        return (
            (self.structures - self.gamma_equals_phi)
            + self.gamma_not_substructure
            + self.gamma_not_finitary_closed
            + self.oracle_mismatches
            + self.dichotomy_violations
        )

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def merge(self, other: CorpusStats) -> CorpusStats:
        out = CorpusStats(self.signature, self.sizes + other.sizes)
        for name in (
            "structures", "gamma_equals_phi", "gamma_not_substructure", "gamma_not_finitary_closed",
            "oracle_mismatches", "dichotomy_violations", "mixed_structures", "elapsed",
        ):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.examples = (self.examples + other.examples)[:5]
        return out

    def to_json(self) -> dict:
        d = asdict(self)
        d["elapsed"] = round(self.elapsed, 3)
        d["violations"] = self.violations
        return d


def default_config(signature: str) -> ClosureConfig:
    if signature not in SIGNATURES:
        raise ValueError(f"signature must be one of {SIGNATURES}")
    return LATTICE if signature == "lattice" else SEMILATTICE


def survey(structures: Iterable, signature: str, cfg: Optional[ClosureConfig] = None) -> CorpusStats:
    cfg = cfg or default_config(signature)
    stats = CorpusStats(signature)
    t0 = time.perf_counter()
    for s in structures:
        stats.structures += 1
        rep = analyze(s, cfg, method="bruteforce")
        bad = []
        if rep.gamma_equals_phi:
            stats.gamma_equals_phi += 1
        else:
            bad.append("gamma != phi")
        if not rep.gamma_is_substructure:
            stats.gamma_not_substructure += 1
            bad.append("gamma not closed")
        split = not len(rep.gamma & rep.indispensables) and (rep.gamma | rep.indispensables).is_full()
        if not split and signature == "semilattice":
            stats.dichotomy_violations += 1
            bad.append("dichotomy")
        elif not split:
            stats.mixed_structures += 1
        if signature == "semilattice":
            reducible, _ = meet_reducible_elements(s, cfg)
            if reducible != rep.gamma:
                stats.oracle_mismatches += 1
                bad.append("oracle")
        elif isinstance(s, FiniteLattice) and finitary_sublattice_closure(s, rep.gamma) != rep.gamma:
            stats.gamma_not_finitary_closed += 1
            bad.append("gamma not finitary closed")
        if bad and len(stats.examples) < 5:
            stats.examples.append({"covers": s.covers(), "size": s.size, "failed": bad})
    stats.elapsed = time.perf_counter() - t0
    return stats


def structures(n: int, signature: str):
    for lat in enumerate_lattices(n):
        yield lat if signature == "lattice" else lat.as_meet_semilattice()


def exhaustive(n_max: int, signature: str, cfg: Optional[ClosureConfig] = None) -> CorpusStats:
    total = CorpusStats(signature)
    for n in range(1, n_max + 1):
        st = survey(structures(n, signature), signature, cfg)
        st.sizes = [n]
        total = total.merge(st)
    return total


def sampled(n: int, count: int, seed: int, signature: str, cfg: Optional[ClosureConfig] = None) -> CorpusStats:
    """``count`` labeled structures of size ``n`` drawn uniformly with replacement."""
    keys = labeled_lattice_keys(n)
    rng = random.Random(seed)

    def gen():
        for _ in range(count):
            lat = lattice_from_key(rng.choice(keys), n)
            yield lat if signature == "lattice" else lat.as_meet_semilattice()

    st = survey(gen(), signature, cfg)
    st.sizes = [n]
    return st


def random_semilattice(n: int, rng: random.Random) -> FiniteMeetSemilattice:
    return lattice_from_key(rng.choice(labeled_lattice_keys(n)), n).as_meet_semilattice()
