"""One-shot verification of the generator-theory claims.

Each record names a claim, where it comes from, a status and the certificates
that back it.  Finite claims are checked exhaustively on a corpus; claims over
the infinite lattices are checked exactly where decidable (closures,
certificates) and instance-by-instance up to a bound otherwise.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import corpus
from .closure import analyze
from .config import ClosureConfig, Completeness
from .errors import LatgenError
from .finite import enumerate_lattices
from .symbolic import desc as D
from .symbolic.claims import (
    DEFAULT_BOUND,
    DEFAULT_SEED,
    gamma_formula,
    gamma_pairwise_closed,
    truncate,
    verify_gamma_not_sublattice,
    window_report,
)
from .symbolic.dualchain import DualChainDesc, dual_chain_closure, status_of_d
from .symbolic.elements import TOP, Family, SymElem
from .symbolic.engine import DEFAULT_MAX_ROUNDS, is_complete_sublattice
from .symbolic.omega_op import encode_join, encode_meet, fold_join, fold_meet, omega_op_eval

VERIFIED = "verified"
INSTANCE_VERIFIED = "instance-verified"
FAILED = "failed"


@dataclass
class ClaimRecord:
    claim_id: str
    location: str
    status: str
    certificates: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAILED

    def to_json(self, timings: bool = False) -> dict:
        d = {
            "claim": self.claim_id,
            "location": self.location,
            "status": self.status,
            "certificates": self.certificates,
            "details": self.details,
        }
        if timings:
            d["elapsed"] = round(self.elapsed, 3)
        return d


@dataclass
class VerificationSuiteResult:
    records: list[ClaimRecord]
    settings: dict

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def failed(self) -> list[ClaimRecord]:
        return [r for r in self.records if not r.ok]

    def to_json(self, timings: bool = False) -> dict:
        return {
            "ok": self.ok,
            "settings": self.settings,
            "claims": [r.to_json(timings) for r in sorted(self.records, key=lambda r: r.claim_id)],
        }


@dataclass(frozen=True)
class SuiteConfig:
    conventions: tuple = ("standard", "none")
    completeness: Completeness = Completeness.COUNTABLE
    bound: int = DEFAULT_BOUND
    trials: int = 1000
    seed: int = DEFAULT_SEED
    max_rounds: int = DEFAULT_MAX_ROUNDS
    finite_bound: int = 5
    samples: int = 1000
    operation_tuples: int = 1000
    truncations: tuple = (2, 3, 4)

    def modes(self) -> list[tuple[str, ClosureConfig]]:
        """Symbolic settings: every requested convention, plus join-complete mode."""
        out = []
        comps = [self.completeness]
        if Completeness.JOIN_COMPLETE not in comps:
            comps.append(Completeness.JOIN_COMPLETE)
        for comp in comps:
            for conv in self.conventions:
                if comp is not self.completeness and conv != self.conventions[0]:
                    continue
                out.append((f"{conv},{comp.value}", ClosureConfig.lattice(conv, comp)))
        return out

    def to_json(self) -> dict:
        return {
            "conventions": list(self.conventions),
            "completeness": self.completeness.value,
            "bound": self.bound,
            "trials": self.trials,
            "seed": self.seed,
            "max_rounds": self.max_rounds,
            "finite_bound": self.finite_bound,
            "samples": self.samples,
            "operation_tuples": self.operation_tuples,
            "truncations": list(self.truncations),
        }


def _timed(fn: Callable[[], ClaimRecord], claim_id: str) -> ClaimRecord:
    t0 = time.perf_counter()
    try:
        rec = fn()
    except LatgenError as exc:
        rec = ClaimRecord(claim_id, "", FAILED, details={"error": f"{type(exc).__name__}: {exc}"})
    rec.elapsed = time.perf_counter() - t0
    return rec


def _stable(st: corpus.CorpusStats) -> dict:
    d = st.to_json()
    d.pop("elapsed")
    return d


def _status(ok: bool, parametric: bool = False) -> str:
    if not ok:
        return FAILED
    return INSTANCE_VERIFIED if parametric else VERIFIED


# -- finite claims ----------------------------------------------------------------


def claim_semilattice_dichotomy(sc: SuiteConfig, conv: str) -> ClaimRecord:
    cfg = ClosureConfig.semilattice(conv)
    st = corpus.exhaustive(sc.finite_bound, "semilattice", cfg)
    if sc.samples:
        st = st.merge(corpus.sampled(sc.finite_bound + 1, sc.samples, sc.seed, "semilattice", cfg))
    return ClaimRecord(
        f"finite.semilattice-nongenerators-are-meet-reducible[{conv}]",
        "complete semilattices: non-generator iff meet-reducible; indispensable or non-generator",
        _status(st.ok),
        details=_stable(st),
    )


def claim_finite_gamma_phi(sc: SuiteConfig, conv: str) -> ClaimRecord:
    st = corpus.exhaustive(sc.finite_bound, "lattice", ClosureConfig.lattice(conv))
    return ClaimRecord(
        f"finite.lattice-gamma-equals-phi[{conv}]",
        "finite structures: Γ = Φ; finitary Γ is a sublattice",
        _status(st.ok),
        details=_stable(st),
    )


def claim_truncations(sc: SuiteConfig) -> ClaimRecord:
    rows, ok = [], True
    for fam in (Family.OMEGA, Family.OMEGA_SQ):
        for k in sc.truncations:
            lat = truncate(fam, k)
            rep = analyze(lat)
            ok &= rep.gamma_equals_phi
            rows.append({"family": fam.value, "k": k, "size": lat.size, "method": rep.method,
                         "gamma_equals_phi": rep.gamma_equals_phi})
    return ClaimRecord(
        "finite.truncations-gamma-equals-phi",
        "finite truncations of the countable examples have Γ = Φ",
        _status(ok),
        details={"truncations": rows},
    )


# -- symbolic claims ------------------------------------------------------------------


def _window_claims(sc: SuiteConfig, family: Family, mode: str, cfg: ClosureConfig) -> list[ClaimRecord]:
    t0 = time.perf_counter()
    wr = window_report(family, sc.bound, cfg, sc.trials, sc.seed, max_rounds=sc.max_rounds)
    tag = f"{family.value}[{mode}]"
    top0 = SymElem(family, TOP, 0)
    cert = wr.relative_generators.get(top0)
    screens = sorted(wr.screened.values(), key=lambda r: r.element)
    # in ω+1 x 2 every member of Γ is an extreme, proven directly
    screens_ok = all(s.passed for s in screens) and (bool(screens) or family is Family.OMEGA)
    out = [
        ClaimRecord(
            f"{tag}.gamma-and-phi",
            "closed forms of Γ and Φ",
            _status(wr.gamma_matches_formula and wr.phi_matches_formula, parametric=True),
            details={
                "bound": sc.bound,
                "window_size": len(D.window(family, sc.bound)),
                "gamma_in_window": [repr(e) for e in sorted(wr.gamma)],
                "phi_minus_gamma": [repr(e) for e in sorted(wr.phi - wr.gamma)],
                "gamma_matches_formula": wr.gamma_matches_formula,
                "phi_matches_formula": wr.phi_matches_formula,
                "relative_generators_certified": len(wr.relative_generators),
                "extremes": {repr(e): r for e, r in sorted(wr.proven_nongenerators.items())},
            },
        ),
        ClaimRecord(
            f"{tag}.top0-relative-generator",
            "(top,0) is a relative generator witnessed by M = (K x {1}) ∪ {bottom}",
            _status(cert is not None),
            certificates=[cert.to_json()] if cert is not None else [],
        ),
        ClaimRecord(
            f"{tag}.maximal-catalog",
            "listed co-finite maximal proper complete sublattices",
            _status(wr.catalog_all_maximal, parametric=True),
            details={"bound": sc.bound},
        ),
        ClaimRecord(
            f"{tag}.nongenerator-screens",
            "members of Γ lie in every maximal instance and survive randomized trials",
            _status(screens_ok, parametric=True),
            details={
                "screened": len(screens),
                "trials": sc.trials,
                "seed": sc.seed,
                "active_trials_min": min((s.active_trials for s in screens), default=0),
                "failures": [s.to_json() for s in screens if not s.passed][:3],
            },
        ),
    ]
    for r in out:
        r.elapsed = (time.perf_counter() - t0) / len(out)
    return out


def claim_limit_rejection(sc: SuiteConfig, mode: str, cfg: ClosureConfig) -> ClaimRecord:
    fam = Family.OMEGA
    d = D.CoFinite.of(fam, [SymElem(fam, TOP, 0)])
    res = is_complete_sublattice(d, cfg)
    ok = not res.closed and res.forcing is not None and res.forcing.reason == "limit join"
    return ClaimRecord(
        f"omega[{mode}].complement-of-top0-not-closed",
        "L - {(ω,0)} is not closed under infinitary joins",
        _status(ok),
        certificates=[res.forcing.to_json()] if res.forcing else [],
    )


def claim_gamma_not_sublattice(sc: SuiteConfig, family: Family, mode: str, cfg: ClosureConfig) -> ClaimRecord:
    res = verify_gamma_not_sublattice(family, cfg, sc.max_rounds)
    details = dict(res.details)
    certs = [details.pop("certificate")] if "certificate" in details else []
    return ClaimRecord(
        f"{family.value}[{mode}].{res.claim}",
        "Γ is a complete sublattice of ω+1 x 2 but not of ω²+1 x 2; Φ = <Γ>",
        _status(res.ok),
        certificates=certs,
        details=details,
    )


def claim_gamma_finitary_closed(sc: SuiteConfig) -> ClaimRecord:
    ok = gamma_pairwise_closed(Family.OMEGA_SQ, min(sc.bound, 12))
    return ClaimRecord(
        "omega_sq.gamma-finitary-sublattice",
        "binary meets and joins of members of Γ stay in Γ",
        _status(ok, parametric=True),
        details={"gamma": D.desc_to_json(gamma_formula(Family.OMEGA_SQ))},
    )


def claim_dual_chain(sc: SuiteConfig) -> ClaimRecord:
    fin = status_of_d(Completeness.FINITARY)
    cnt = status_of_d(Completeness.COUNTABLE)
    finite_pair = DualChainDesc.of([3, 7])
    stable = all(dual_chain_closure(finite_pair, m) == finite_pair for m in Completeness)
    ok = fin.indispensable and not fin.non_generator and cnt.non_generator and not cnt.indispensable and stable
    return ClaimRecord(
        "dual-chain.d-depends-on-completeness",
        "descending ω-chain plus bottom d: d indispensable when finitary, non-generator when countably complete",
        _status(ok),
        details={"finitary": fin.to_json(), "countable": cnt.to_json(), "finite_sets_stable": stable},
    )


def _random_tuples(sc: SuiteConfig):
    """Seeded (lattice, x, y, xs) draws from the finite corpus and both families."""
    rng = random.Random(sc.seed)
    finite = [lat for n in range(1, sc.finite_bound + 1) for lat in enumerate_lattices(n)]
    windows = {f: D.window(f, 8) for f in Family}
    for i in range(sc.operation_tuples):
        pick = i % 3
        if pick == 0:
            lat = rng.choice(finite)
            pool = list(range(lat.size))
        else:
            lat = Family.OMEGA if pick == 1 else Family.OMEGA_SQ
            pool = windows[lat]
        xs = [rng.choice(pool) for _ in range(rng.randint(1, 6))]
        yield lat, rng.choice(pool), rng.choice(pool), xs


def claim_single_operation(sc: SuiteConfig) -> ClaimRecord:
    mismatches, checked = [], 0
    for lat, x, y, xs in _random_tuples(sc):
        checked += 1
        got_m = omega_op_eval(encode_meet(x, y), lat)
        got_j = omega_op_eval(encode_join(xs), lat)
        if got_m != fold_meet(lat, [x, y]) or got_j != fold_join(lat, xs):
            mismatches.append({"x": repr(x), "y": repr(y), "xs": [repr(v) for v in xs]})
    return ClaimRecord(
        "single-operation.meets-and-joins-expressible",
        "f(x0, x1, ...) = ⋁ (x_2i ∧ x_2i+1) expresses binary meets and finite joins",
        _status(not mismatches),
        details={"tuples": checked, "mismatches": mismatches[:3]},
    )


def run_suite(sc: Optional[SuiteConfig] = None) -> VerificationSuiteResult:
    sc = sc or SuiteConfig()
    recs: list[ClaimRecord] = []
    for conv in sc.conventions:
        recs.append(_timed(lambda: claim_semilattice_dichotomy(sc, conv), f"finite.semilattice[{conv}]"))
        recs.append(_timed(lambda: claim_finite_gamma_phi(sc, conv), f"finite.lattice[{conv}]"))
    recs.append(_timed(lambda: claim_truncations(sc), "finite.truncations"))
    for mode, cfg in sc.modes():
        for fam in Family:
            try:
                recs.extend(_window_claims(sc, fam, mode, cfg))
            except LatgenError as exc:
                recs.append(ClaimRecord(f"{fam.value}[{mode}].window", "", FAILED,
                                        details={"error": f"{type(exc).__name__}: {exc}"}))
            recs.append(_timed(lambda: claim_gamma_not_sublattice(sc, fam, mode, cfg), f"{fam.value}[{mode}].gamma"))
        recs.append(_timed(lambda: claim_limit_rejection(sc, mode, cfg), f"omega[{mode}].limit"))
    recs.append(_timed(lambda: claim_gamma_finitary_closed(sc), "omega_sq.gamma-finitary-sublattice"))
    recs.append(_timed(lambda: claim_dual_chain(sc), "dual-chain"))
    recs.append(_timed(lambda: claim_single_operation(sc), "single-operation"))
    return VerificationSuiteResult(recs, sc.to_json())
