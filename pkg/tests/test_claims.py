import random

import pytest

from latgen.closure import analyze
from latgen.config import LATTICE, ClosureConfig, Completeness
from latgen.symbolic import desc as D
from latgen.symbolic.claims import (
    catalog_instance_for,
    extreme_nongenerator_reason,
    gamma_formula,
    gamma_pairwise_closed,
    maximal_catalog,
    nongenerator_membership_screen,
    phi_formula,
    random_generating_candidate,
    sample_trials,
    truncate,
    verify_gamma_not_sublattice,
    window_report,
)
from latgen.symbolic.elements import TOP, Family, SymElem, bottom, elem, top
from latgen.symbolic.engine import (
    complete_closure,
    is_complete_sublattice,
    is_maximal_complete_sublattice,
    relative_generator_certificate,
)

O, Q = Family.OMEGA, Family.OMEGA_SQ
ALT = [
    ClosureConfig.lattice("none"),
    ClosureConfig.lattice("standard", Completeness.JOIN_COMPLETE),
    ClosureConfig.lattice("none", Completeness.JOIN_COMPLETE),
]


def test_formulas():
    assert set(D.sample_members(gamma_formula(O), 10)) == {bottom(O), top(O)}
    assert set(D.sample_members(phi_formula(O), 10)) == {bottom(O), top(O), SymElem(O, TOP, 0)}
    g = gamma_formula(Q)
    assert set(g.blocks) == {D.Point(TOP, 1), D.ZeroColTail(0, 0), D.ZeroColTail(1, 1)}
    assert elem(Q, 7, 0, 0) in g and elem(Q, 7, 0, 1) in g and elem(Q, 0, 0, 1) not in g
    assert SymElem(Q, TOP, 0) not in g and SymElem(Q, TOP, 0) in phi_formula(Q)


@pytest.mark.parametrize("cfg", [LATTICE] + ALT)
def test_gamma_closure(cfg):
    res = verify_gamma_not_sublattice(Q, cfg)
    assert res.ok and res.details["closure_equals_phi"]
    assert complete_closure(gamma_formula(Q), cfg) == phi_formula(Q)
    assert verify_gamma_not_sublattice(O, cfg).ok


def test_gamma_closure_without_top_and_conventions():
    # dropping (Top,1) and the extremes conventions still produces (Top,0)
    g = D.Positive.of(Q, [D.ZeroColTail(0, 0), D.ZeroColTail(1, 1)])
    c = complete_closure(g, ClosureConfig.lattice("none"))
    assert SymElem(Q, TOP, 0) in c


def test_gamma_pairwise_closed():
    assert gamma_pairwise_closed(Q, 12)
    assert gamma_pairwise_closed(O, 12)


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("cfg", [LATTICE] + ALT)
def test_catalog_instances_are_maximal(family, cfg):
    cat = maximal_catalog(family, 6)
    for _, inst in cat:
        assert is_complete_sublattice(inst, cfg)
        assert is_maximal_complete_sublattice(inst, cfg)


def test_catalog_lookup():
    assert catalog_instance_for(elem(Q, 2, 5, 0)) == D.CoFinite.of(Q, [elem(Q, 2, 5, 0), elem(Q, 2, 5, 1)])
    assert catalog_instance_for(elem(Q, 0, 0, 1)) == D.CoFinite.of(Q, [elem(Q, 0, 0, 1)])
    assert catalog_instance_for(elem(Q, 3, 0, 0)) is None
    assert catalog_instance_for(SymElem(Q, TOP, 0)) is None


def test_elements_outside_phi_have_certificates():
    # every sampled element outside Φ is excluded by some instance, which
    # then witnesses it as a relative generator
    for family in Family:
        phi = phi_formula(family)
        for e in D.window(family, 6):
            if e in phi:
                continue
            inst = catalog_instance_for(e)
            assert inst is not None and e not in inst
            relative_generator_certificate(e, inst)


def test_screen_examples():
    pool = sample_trials(Q, 300)
    res = nongenerator_membership_screen(Q, elem(Q, 3, 0, 0), shared_trials=pool)
    assert res.passed and res.trials == 300 and res.active_trials > 0
    res = nongenerator_membership_screen(Q, elem(Q, 2, 5, 0), shared_trials=pool)
    assert not res.membership_ok
    assert res.excluded_by == D.CoFinite.of(Q, [elem(Q, 2, 5, 0), elem(Q, 2, 5, 1)])
    # (ω,0) lies in every maximal instance but is a relative generator
    pool_o = sample_trials(O, 300)
    res = nongenerator_membership_screen(O, SymElem(O, TOP, 0), shared_trials=pool_o)
    assert res.membership_ok


def test_screen_falsifies_a_relative_generator():
    pool = sample_trials(Q, 300)
    res = nongenerator_membership_screen(Q, SymElem(Q, TOP, 0), shared_trials=pool)
    assert res.membership_ok and res.counterexample is not None
    x = res.counterexample
    whole = D.whole(Q)
    assert complete_closure(x) != whole
    assert complete_closure(x.union([SymElem(Q, TOP, 0)])) == whole


def test_trials_are_seeded():
    a = [x for x, _, _ in sample_trials(Q, 20, seed=5)]
    b = [x for x, _, _ in sample_trials(Q, 20, seed=5)]
    c = [x for x, _, _ in sample_trials(Q, 20, seed=6)]
    assert a == b and a != c


def test_candidate_generator_mixes_outcomes():
    rng = random.Random(1)
    whole = D.whole(Q)
    gens = sum(complete_closure(random_generating_candidate(Q, rng)) == whole for _ in range(200))
    assert 20 < gens < 180


@pytest.mark.parametrize("cfg", [LATTICE, ClosureConfig.lattice("none")])
def test_extremes(cfg):
    for family in Family:
        assert extreme_nongenerator_reason(top(family), cfg) is not None
        assert extreme_nongenerator_reason(bottom(family), cfg) is not None
        assert extreme_nongenerator_reason(elem(family, 1, 1, 0) if family is Q else elem(O, 1), cfg) is None


@pytest.mark.parametrize("cfg", [LATTICE] + ALT[:2])
def test_window_report_omega(cfg):
    wr = window_report(O, 10, cfg, trials=100)
    assert wr.ok
    assert wr.gamma == {bottom(O), top(O)}
    assert wr.phi == {bottom(O), top(O), SymElem(O, TOP, 0)}
    assert SymElem(O, TOP, 0) in wr.relative_generators


def test_window_report_omega_sq_small():
    wr = window_report(Q, 5, trials=200)
    assert wr.ok
    assert SymElem(Q, TOP, 0) in wr.relative_generators
    assert elem(Q, 3, 0, 0) in wr.screened and wr.screened[elem(Q, 3, 0, 0)].passed


@pytest.mark.parametrize("k,size", [(1, 4), (2, 6), (3, 8)])
def test_truncate_omega_sizes(k, size):
    lat = truncate(O, k)
    assert lat.size == size
    lat.validate()


def test_truncate_omega_sq_gamma_equals_phi():
    lat = truncate(Q, 3)
    assert lat.size == 20
    rep = analyze(lat)
    assert rep.gamma_equals_phi


def test_truncate_rejects_zero():
    with pytest.raises(ValueError):
        truncate(O, 0)
