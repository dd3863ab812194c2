"""Non-generators and the Frattini set of the two countable lattices.

The closed-form sets Γ and Φ, the catalog of maximal proper complete
sublattices, certificates for relative generators, and a seeded falsifier for
non-generator claims (membership in every catalog instance plus random
generating-set trials).  Statements quantified over all X are screened, not
proven.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional

from ..config import ClosureConfig, LATTICE
from ..errors import CertificateInvalid
from ..finite import FiniteLattice, add_top, chain, lex_product, product
from . import desc as D
from .elements import TOP, ZERO, Family, OrdK, SymElem, bottom, elem, sym_join, sym_meet, top
from .engine import (
    DEFAULT_MAX_ROUNDS,
    complete_closure,
    is_complete_sublattice,
    is_maximal_complete_sublattice,
    relative_generator_certificate,
)

DEFAULT_SEED = 0xA11CE
DEFAULT_BOUND = 25


def gamma_formula(family) -> D.Positive:
    family = Family.parse(family)
    if family is Family.OMEGA:
        return D.Positive.of(family, [bottom(family), top(family)])
    return D.Positive.of(family, [D.ZeroColTail(0, 0), D.ZeroColTail(1, 1), D.Point(TOP, 1)])


def phi_formula(family) -> D.Positive:
    family = Family.parse(family)
    return gamma_formula(family).union([SymElem(family, TOP, 0)])


def generator_m(family) -> D.Positive:
    """The proper complete sublattice (K x {1}) ∪ {bottom}."""
    family = Family.parse(family)
    return D.Positive.of(family, [D.FullTail(ZERO, 1), D.Point(ZERO, 0)])


def maximal_catalog(family, bound: int = DEFAULT_BOUND) -> list[tuple[tuple, D.CoFinite]]:
    """Listed maximal proper complete sublattices with parameters up to ``bound``.

    ω+1:  L - {(0,1)} and L - {(n,0),(n,1)} for n >= 1.
    ω²+1: L - {(0⋉0,1)} and L - {(n⋉m,0),(n⋉m,1)} for m >= 1.
    """
    family = Family.parse(family)
    out = [((), D.CoFinite.of(family, [elem(family, ZERO, bit=1)]))]
    if family is Family.OMEGA:
        params = [(n,) for n in range(1, bound + 1)]
        make = lambda n: OrdK.pair(0, n)
    else:
        params = [(n, m) for n in range(bound + 1) for m in range(1, bound + 1)]
        make = lambda n, m: OrdK.pair(n, m)
    for p in params:
        k = make(*p)
        out.append((p, D.CoFinite.of(family, [SymElem(family, k, 0), SymElem(family, k, 1)])))
    return out


def catalog_instance_for(e: SymElem) -> Optional[D.CoFinite]:
    """The listed maximal instance excluding ``e``, if any (parametric lookup)."""
    family = e.family
    if e.k == ZERO and e.bit == 1:
        return D.CoFinite.of(family, [e])
    if e.k.top or e.k.r == 0:
        return None
    return D.CoFinite.of(family, [SymElem(family, e.k, 0), SymElem(family, e.k, 1)])


@dataclass
class VerificationResult:
    claim: str
    ok: bool
    details: dict = field(default_factory=dict)


def verify_gamma_not_sublattice(
    family=Family.OMEGA_SQ, cfg: ClosureConfig = LATTICE, max_rounds: int = DEFAULT_MAX_ROUNDS
) -> VerificationResult:
    """ω²+1: the closure of Γ picks up (ω²,0), a certified relative generator.
    ω+1: Γ is already closed."""
    family = Family.parse(family)
    gamma = gamma_formula(family)
    closure = complete_closure(gamma, cfg, max_rounds)
    top0 = SymElem(family, TOP, 0)
    details = {"closure_of_gamma": D.desc_to_json(closure)}
    if family is Family.OMEGA:
        ok = closure == gamma
        details["gamma_closed"] = ok
        return VerificationResult("gamma-is-complete-sublattice", ok, details)
    cert = relative_generator_certificate(top0, generator_m(family), cfg, max_rounds)
    ok = top0 in closure and top0 not in gamma and closure == phi_formula(family)
    details.update(
        top0_in_closure=top0 in closure,
        top0_in_gamma=top0 in gamma,
        closure_equals_phi=closure == phi_formula(family),
        certificate=cert.to_json(),
    )
    return VerificationResult("gamma-not-complete-sublattice", ok, details)


# -- randomized screen -----------------------------------------------------------------


def random_generating_candidate(family: Family, rng: random.Random, rows: int = 4, width: int = 5) -> D.Positive:
    """A random positive description biased towards generating most of L.

    Each row below a random cut-off gets a tail in some bit plus points with
    high probability for the finitely many elements before it; a final
    segment covers the remaining rows.  Extra noise points and the frequent
    omission of pieces make both generating and non-generating sets common.
    """
    blocks: list = []
    nrows = 1 if family is Family.OMEGA else rng.randint(1, rows)
    for q in range(nrows):
        for r in range(rng.randint(1, width)):
            if rng.random() < 0.92:
                blocks.append(D.Point(OrdK.pair(q, r), rng.randint(0, 1)))
        start = rng.randint(0, width)
        if rng.random() < 0.9:
            bit = rng.randint(0, 1)
            blocks.append(D.RowTail(q, start, bit))
            for r in range(start):
                if rng.random() < 0.9:
                    blocks.append(D.Point(OrdK.pair(q, r), rng.randint(0, 1)))
    if family is Family.OMEGA_SQ:
        for bit in (0, 1):
            if rng.random() < 0.6:
                blocks.append(D.FullTail(OrdK.pair(nrows, rng.randint(0, 2)), bit))
            if rng.random() < 0.3:
                blocks.append(D.ZeroColTail(rng.randint(0, nrows + 1), bit))
        for r in range(3):
            if rng.random() < 0.8:
                blocks.append(D.Point(OrdK.pair(nrows, r), rng.randint(0, 1)))
    else:
        for bit in (0, 1):
            if rng.random() < 0.4:
                blocks.append(D.Point(TOP, bit))
    for _ in range(rng.randint(0, 3)):
        q = 0 if family is Family.OMEGA else rng.randint(0, nrows + 1)
        blocks.append(D.Point(OrdK.pair(q, rng.randint(0, width + 2)), rng.randint(0, 1)))
    if rng.random() < 0.85:
        blocks.append(D.Point(ZERO, 1))
    if rng.random() < 0.3:
        blocks.append(D.Point(TOP, rng.randint(0, 1)))
    if rng.random() < 0.1:
        blocks.append(D.FullTail(ZERO, 1))
    return D.Positive.of(family, blocks)


@dataclass
class ScreenResult:
    element: SymElem
    membership_ok: bool
    excluded_by: Optional[D.CoFinite]
    trials: int
    active_trials: int
    counterexample: Optional[D.Positive]
    instances_checked: int

    @property
    def passed(self) -> bool:
        return self.membership_ok and self.counterexample is None

    def to_json(self) -> dict:
        return {
            "element": D.elem_to_json(self.element),
            "membership_ok": self.membership_ok,
            "excluded_by": D.desc_to_json(self.excluded_by) if self.excluded_by else None,
            "instances_checked": self.instances_checked,
            "trials": self.trials,
            "active_trials": self.active_trials,
            "counterexample": D.desc_to_json(self.counterexample) if self.counterexample else None,
            "passed": self.passed,
        }


def sample_trials(
    family, trials: int, seed: int = DEFAULT_SEED, cfg: ClosureConfig = LATTICE, max_rounds: int = DEFAULT_MAX_ROUNDS
):
    """Seeded list of ``(X, <X>, <X> == L)`` shared by screens of one run."""
    family = Family.parse(family)
    rng = random.Random(seed)
    whole = D.whole(family)
    out = []
    for _ in range(trials):
        x = random_generating_candidate(family, rng)
        c = complete_closure(x, cfg, max_rounds)
        out.append((x, c, c == whole))
    return out


def nongenerator_membership_screen(
    family,
    a: SymElem,
    bound: int = DEFAULT_BOUND,
    trials: int = 1000,
    seed: int = DEFAULT_SEED,
    cfg: ClosureConfig = LATTICE,
    shared_trials=None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> ScreenResult:
    """Necessary-condition screen for ``a`` being a non-generator.

    ``a`` must lie in every catalog instance with parameters up to ``bound``,
    and no sampled X may have ``<X, a> = L`` while ``<X> != L``.
    """
    family = Family.parse(family)
    catalog = maximal_catalog(family, bound)
    excluded_by = next((inst for _, inst in catalog if a not in inst), None)
    whole = D.whole(family)
    pool = shared_trials if shared_trials is not None else sample_trials(family, trials, seed, cfg, max_rounds)
    active = 0
    counterexample = None
    for x, closed, generates in pool:
        if generates:
            active += 1
            continue
        if a in closed:
            continue
        if complete_closure(closed.union([a]), cfg, max_rounds) == whole:
            active += 1
            counterexample = x
            break
    return ScreenResult(
        element=a,
        membership_ok=excluded_by is None,
        excluded_by=excluded_by,
        trials=len(pool),
        active_trials=active,
        counterexample=counterexample,
        instances_checked=len(catalog),
    )


# -- window report -----------------------------------------------------------------------


@dataclass
class WindowReport:
    family: Family
    bound: int
    gamma: set
    phi: set
    relative_generators: dict
    proven_nongenerators: dict
    screened: dict
    gamma_matches_formula: bool
    phi_matches_formula: bool
    catalog_all_maximal: bool
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return (
            self.gamma_matches_formula
            and self.phi_matches_formula
            and self.catalog_all_maximal
            and all(s.passed for s in self.screened.values())
        )


def extreme_nongenerator_reason(e: SymElem, cfg: ClosureConfig) -> Optional[str]:
    """Proof that a lattice extreme is a non-generator, or None.

    Under the standard conventions the extremes lie in every substructure.
    Otherwise the top absorbs: <X, top> = <X> ∪ {top}, so <X, top> = L puts
    L - {top} inside <X>, and if L - {top} is not closed, top ∈ <X> too.
    Dually for the bottom.
    """
    family = e.family
    if e == top(family):
        if cfg.forces_top:
            return "in every substructure (empty meet)"
    elif e == bottom(family):
        if cfg.forces_bottom:
            return "in every substructure (empty join)"
    else:
        return None
    forcing = is_complete_sublattice(D.CoFinite.of(family, [e]), cfg).forcing
    if forcing is None:
        return None
    return f"absorbing extreme; complement not closed ({forcing.reason})"


def window_report(
    family,
    bound: int = DEFAULT_BOUND,
    cfg: ClosureConfig = LATTICE,
    trials: int = 1000,
    seed: int = DEFAULT_SEED,
    screen_bound: Optional[int] = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> WindowReport:
    """Classify every element with coordinates up to ``bound``.

    Φ on the window: elements in every catalog instance.  Relative generators
    get a checked certificate (X = the catalog instance avoiding them, or X = M
    for the top of the bit-0 row).  Extremes get a proof; the remaining members
    of Φ are screened.
    """
    t0 = time.perf_counter()
    family = Family.parse(family)
    catalog = maximal_catalog(family, bound)
    catalog_ok = all(
        is_complete_sublattice(inst, cfg) and is_maximal_complete_sublattice(inst, cfg) for _, inst in catalog
    )
    pool = sample_trials(family, trials, seed, cfg, max_rounds)
    phi, gamma = set(), set()
    relgens, proven, screened = {}, {}, {}
    for e in D.window(family, bound):
        inst = next((i for _, i in catalog if e not in i), None)
        if inst is not None:
            relgens[e] = relative_generator_certificate(e, inst, cfg, max_rounds)
            continue
        phi.add(e)
        reason = extreme_nongenerator_reason(e, cfg)
        if reason is not None:
            proven[e] = reason
            gamma.add(e)
            continue
        try:
            relgens[e] = relative_generator_certificate(e, generator_m(family), cfg, max_rounds)
            continue
        except CertificateInvalid:
            pass
        if screen_bound is None or _param(e) <= screen_bound:
            res = nongenerator_membership_screen(
                family, e, bound, cfg=cfg, shared_trials=pool, max_rounds=max_rounds
            )
            screened[e] = res
            if res.passed:
                gamma.add(e)
        else:
            gamma.add(e)
    win = set(D.window(family, bound))
    gf = {e for e in win if e in gamma_formula(family)}
    pf = {e for e in win if e in phi_formula(family)}
    return WindowReport(
        family, bound, gamma, phi, relgens, proven, screened, gamma == gf, phi == pf, catalog_ok,
        time.perf_counter() - t0,
    )


def _param(e: SymElem) -> int:
    return 0 if e.k.top else max(e.k.q, e.k.r)


# -- finite truncations ----------------------------------------------------------------


def truncate(family, k: int) -> FiniteLattice:
    """Finite analogue: (chain(k)+top) x 2, or (chain(k)⋉chain(k)+top) x 2."""
    family = Family.parse(family)
    if k < 1:
        raise ValueError("k >= 1")
    base = chain(k) if family is Family.OMEGA else lex_product(chain(k), chain(k))
    return product(add_top(base), chain(2))


def gamma_pairwise_closed(family=Family.OMEGA_SQ, bound: int = 10) -> bool:
    """Pairwise meets/joins of sampled Γ elements stay in Γ."""
    g = gamma_formula(family)
    members = D.sample_members(g, bound)
    return all(sym_meet(x, y) in g and sym_join(x, y) in g for x in members for y in members)
