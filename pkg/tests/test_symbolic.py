import json

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from latgen.closure import generate
from latgen.config import LATTICE, ClosureConfig, Completeness
from latgen.errors import (
    CertificateInvalid,
    FamilyMismatch,
    NonTermination,
    NotASublattice,
    NotProper,
    ParseError,
    UnsupportedBlock,
)
from latgen.symbolic import desc as D
from latgen.symbolic.claims import generator_m, truncate
from latgen.symbolic.elements import TOP, ZERO, Family, OrdK, SymElem, elem, sym_join, sym_leq, sym_meet, top
from latgen.symbolic.engine import (
    complete_closure,
    is_complete_sublattice,
    is_maximal_complete_sublattice,
    relative_generator_certificate,
)

from strategies import blocks, elems, ords, raw_descriptions, raw_member

O, Q = Family.OMEGA, Family.OMEGA_SQ
MODES = [
    LATTICE,
    ClosureConfig.lattice("none"),
    ClosureConfig.lattice("standard", Completeness.JOIN_COMPLETE),
    ClosureConfig.lattice("none", Completeness.FINITARY),
    ClosureConfig.lattice("standard", Completeness.FINITARY),
]
COMPLETE_MODES = MODES[:3]


def closure_or_skip(d, cfg):
    """Finitary closures of tails can leave the block grammar; those are
    rejected by the engine and skipped here."""
    try:
        return complete_closure(d, cfg)
    except UnsupportedBlock:
        assume(False)


# -- ordinals and elements ------------------------------------------------------------------


def test_ordk_order():
    assert OrdK.pair(0, 9) < OrdK.pair(1, 0) < OrdK.pair(1, 1) < TOP
    assert OrdK.pair(2, 0).is_limit and TOP.is_limit and not OrdK.pair(0, 0).is_limit
    assert not OrdK.pair(2, 3).is_limit
    with pytest.raises(ValueError):
        OrdK.pair(-1, 0)
    with pytest.raises(ValueError):
        TOP.succ()


@given(st.lists(ords(Q, 9), min_size=1, max_size=12))
def test_every_finite_set_of_ordinals_has_a_minimum(ks):
    m = min(ks)
    assert all(m <= k for k in ks)


def test_sym_meet_join_examples():
    assert sym_join(elem(Q, 1, 2, 0), elem(Q, 0, 5, 1)) == elem(Q, 1, 2, 1)
    for k in [OrdK.pair(3, 1), OrdK.pair(3, 7), OrdK.pair(5, 0), TOP]:
        assert sym_meet(elem(Q, 3, 1, 1), SymElem(Q, k, 0)) == elem(Q, 3, 1, 0)
    x = elem(Q, 4, 2, 0)
    assert sym_meet(x, top(Q)) == x


def test_family_checks():
    with pytest.raises(FamilyMismatch):
        sym_meet(elem(O, 1), elem(Q, 1, 1))
    with pytest.raises(FamilyMismatch):
        SymElem(O, OrdK.pair(1, 0), 0)
    with pytest.raises(FamilyMismatch):
        Family.parse("omega_cubed")
    with pytest.raises(FamilyMismatch):
        D.Positive.of(O, [D.ZeroColTail(0, 0)])


@given(elems(Q), elems(Q), elems(Q))
def test_product_lattice_laws(x, y, z):
    assert sym_meet(x, y) == sym_meet(y, x)
    assert sym_meet(sym_meet(x, y), z) == sym_meet(x, sym_meet(y, z))
    assert sym_join(x, sym_meet(x, y)) == x
    assert sym_leq(x, y) == (sym_meet(x, y) == x)


# -- descriptions ------------------------------------------------------------------------


@given(raw_descriptions())
def test_normal_form_denotation(fd):
    family, raw = fd
    d = D.Positive.of(family, raw)
    for e in D.window(family, 8):
        assert (e in d) == raw_member(raw, e)


@given(raw_descriptions(), st.randoms(use_true_random=False))
def test_normal_form_is_canonical(fd, rnd):
    family, raw = fd
    d = D.Positive.of(family, raw)
    # respell the same set: shuffled, duplicated, redundant points added
    extra = [D.Point(e.k, e.bit) for e in D.sample_members(d, 3)]
    respelled = list(raw) + list(d.blocks) + extra
    rnd.shuffle(respelled)
    assert D.Positive.of(family, respelled) == d
    assert D.Positive.of(family, d.blocks) == d


@given(raw_descriptions(), raw_descriptions())
def test_syntactic_equality_is_extensional(a, b):
    assume(a[0] is b[0])
    family = a[0]
    da, db = D.Positive.of(family, a[1]), D.Positive.of(family, b[1])
    same = all((e in da) == (e in db) for e in D.window(family, 8))
    # parameters are at most 5, so a window of 8 sees every difference
    assert same == (da == db)


def test_normalization_examples():
    # a row tail from 0 plus the row's limit and everything above is a final segment
    d = D.Positive.of(Q, [D.RowTail(2, 0, 1), D.FullTail(OrdK.pair(3, 0), 1), D.Point(OrdK.pair(1, 4), 1)])
    assert d.blocks == (D.Point(OrdK.pair(1, 4), 1), D.FullTail(OrdK.pair(2, 0), 1))
    # in ω+1 a row tail plus Top is a final segment
    assert D.Positive.of(O, [D.RowTail(0, 3, 0), D.Point(TOP, 0)]).blocks == (D.FullTail(OrdK.pair(0, 3), 0),)
    # adjacent points extend a tail downwards
    d = D.Positive.of(Q, [D.RowTail(1, 3, 0), D.Point(OrdK.pair(1, 2), 0), D.Point(OrdK.pair(1, 1), 0)])
    assert d.blocks == (D.RowTail(1, 1, 0),)


@given(raw_descriptions())
def test_json_roundtrip(fd):
    family, raw = fd
    d = D.Positive.of(family, raw)
    text = json.dumps(D.desc_to_json(d), sort_keys=True)
    assert D.desc_from_json(json.loads(text)) == d


def test_json_shapes():
    d = D.Positive.of(Q, [D.Point(TOP, 1), D.RowTail(2, 1, 0)])
    j = D.desc_to_json(d)
    assert j["kind"] == "positive" and j["family"] == "omega_sq"
    assert {"t": "rowtail", "n": 2, "m0": 1, "bit": 0} in j["blocks"]
    assert {"t": "point", "top": True, "bit": 1} in j["blocks"]
    c = D.CoFinite.of(O, [elem(O, 3, bit=1)])
    assert D.desc_from_json(D.desc_to_json(c)) == c
    with pytest.raises(ParseError):
        D.desc_from_json({"family": "omega", "kind": "other"})
    with pytest.raises(ParseError):
        D.desc_from_json({"family": "omega", "kind": "positive", "blocks": [{"t": "blob", "bit": 0}]})


@given(st.sampled_from(list(Family)), st.lists(elems(Q, 5), max_size=4))
def test_cofinite_to_positive(family, excluded):
    excluded = [SymElem(family, e.k if family is Q or e.k.top else OrdK.pair(0, e.k.r), e.bit) for e in excluded]
    c = D.CoFinite.of(family, excluded)
    try:
        p = D.to_positive(c)
    except UnsupportedBlock:
        # only [k, ω²) intervals lack a description: Top excluded in ω²+1
        assert family is Q and any(e.k.top for e in excluded)
        return
    for e in D.window(family, 7):
        assert (e in p) == (e in c)


def test_interval_below_top_of_omega_sq_is_unsupported():
    with pytest.raises(UnsupportedBlock):
        D.interval_blocks(Q, OrdK.pair(1, 0), TOP, 0)


# -- closure engine ---------------------------------------------------------------------------


def test_zero_column_closure_has_top():
    c = complete_closure(D.Positive.of(Q, [D.ZeroColTail(0, 0)]))
    assert SymElem(Q, TOP, 0) in c


def test_m_is_closed_and_top0_generates():
    for fam in Family:
        m = generator_m(fam)
        assert complete_closure(m) == m
        assert complete_closure(m.union([SymElem(fam, TOP, 0)])) == D.whole(fam)


def test_limit_rule_of_row_tail():
    c = complete_closure(D.Positive.of(Q, [D.RowTail(3, 1, 0)]), ClosureConfig.lattice("none"))
    assert elem(Q, 4, 0, 0) in c and elem(Q, 3, 0, 0) not in c


def test_nontermination_guard():
    x = D.Positive.of(Q, [D.RowTail(0, 0, 0), D.Point(ZERO, 1)])
    with pytest.raises(NonTermination):
        complete_closure(x, LATTICE, max_rounds=1)
    assert complete_closure(x, LATTICE) == complete_closure(x, LATTICE, max_rounds=50)


@given(raw_descriptions(max_blocks=5), st.sampled_from(MODES))
def test_closure_laws(fd, cfg):
    family, raw = fd
    x = D.Positive.of(family, raw)
    c = closure_or_skip(x, cfg)
    members = D.sample_members(x, 7)
    assert all(e in c for e in members)
    assert complete_closure(c, cfg) == c
    assert is_complete_sublattice(c, cfg)


@given(raw_descriptions(max_blocks=4), st.sampled_from(MODES), st.data())
def test_closure_monotone(fd, cfg, data):
    family, raw = fd
    more = data.draw(st.lists(blocks(family, 5), max_size=3))
    x = D.Positive.of(family, raw)
    y = x.union(more)
    cx, cy = closure_or_skip(x, cfg), closure_or_skip(y, cfg)
    assert all(e in cy for e in D.sample_members(cx, 8))


@given(raw_descriptions(max_blocks=5), st.sampled_from(COMPLETE_MODES))
def test_closed_sets_are_closed_elementwise(fd, cfg):
    family, raw = fd
    c = complete_closure(D.Positive.of(family, raw), cfg)
    members = D.sample_members(c, 6)
    for x in members:
        for y in members:
            assert sym_meet(x, y) in c
            assert sym_join(x, y) in c
    # limit rule: every infinite block's join is present
    for b in c.blocks:
        lim = D.block_limit(family, b)
        if lim is not None:
            assert SymElem(family, lim, b.bit) in c


@given(raw_descriptions(max_blocks=5), st.sampled_from(COMPLETE_MODES), st.data())
def test_binary_reduction(fd, cfg, data):
    """Meets of finite subsets are attained at coordinate minima."""
    family, raw = fd
    c = complete_closure(D.Positive.of(family, raw), cfg)
    members = D.sample_members(c, 5)
    assume(members)
    s = data.draw(st.lists(st.sampled_from(members), min_size=1, max_size=6))
    fold = s[0]
    for e in s[1:]:
        fold = sym_meet(fold, e)
    kmin = min(s, key=lambda e: e.k)
    bmin = min(s, key=lambda e: e.bit)
    assert fold == sym_meet(kmin, bmin)
    assert fold in c


def _trunc_index(family, n, e):
    k = e.k
    pos = n * n if family is Q else n
    if not k.top:
        pos = k.q * n + k.r if family is Q else k.r
    return pos * 2 + e.bit


@given(st.sampled_from(list(Family)), st.lists(elems(Q, 3), min_size=1, max_size=6), st.booleans())
def test_finitary_closure_of_points_matches_finite_truncation(family, pts, standard):
    # points with coordinates < 4 live in truncate(family, 4), which is a
    # sublattice of K x 2 for finitely many points
    if family is O:
        pts = [SymElem(O, e.k if e.k.top else OrdK.pair(0, e.k.r), e.bit) for e in pts]
    n = 4
    conv = "standard" if standard else "none"
    cfg = ClosureConfig.lattice(conv, Completeness.FINITARY)
    c = complete_closure(D.Positive.of(family, pts), cfg)
    lat = truncate(family, n)
    fin = generate(lat, [_trunc_index(family, n, e) for e in pts], ClosureConfig.lattice(conv))
    window = [e for e in D.window(family, n - 1)]
    assert {_trunc_index(family, n, e) for e in window if e in c} == set(fin)
    assert all(e in window for e in D.sample_members(c, n + 3))


# -- closedness and maximality ---------------------------------------------------------------


def test_cofinite_examples_in_omega():
    assert is_complete_sublattice(D.CoFinite.of(O, [elem(O, 0, bit=1)]))
    res = is_complete_sublattice(D.CoFinite.of(O, [SymElem(O, TOP, 0)]))
    assert not res and res.forcing.reason == "limit join"
    res = is_complete_sublattice(D.CoFinite.of(O, [elem(O, 1, bit=0)]))
    assert not res and res.forcing.reason == "binary meet"
    assert set(res.forcing.witnesses) == {elem(O, 1, bit=1), elem(O, 2, bit=0)}


def test_cofinite_forcing_witnesses_are_sound():
    for family in Family:
        for e in D.window(family, 4):
            res = is_complete_sublattice(D.CoFinite.of(family, [e]))
            f = res.forcing
            if f is None or f.reason not in ("binary meet", "binary join"):
                continue
            x, y = f.witnesses
            assert x != e and y != e
            op = sym_meet if f.reason == "binary meet" else sym_join
            assert op(x, y) == e


@given(st.sampled_from(list(Family)), st.lists(elems(Q, 4), min_size=1, max_size=3), st.sampled_from(COMPLETE_MODES))
def test_cofinite_closedness_agrees_with_closure(family, excluded, cfg):
    if family is O:
        excluded = [SymElem(O, e.k if e.k.top else OrdK.pair(0, e.k.r), e.bit) for e in excluded]
    c = D.CoFinite.of(family, excluded)
    try:
        p = D.to_positive(c)
    except UnsupportedBlock:
        assume(False)
    assert bool(is_complete_sublattice(c, cfg)) == (complete_closure(p, cfg) == p)


def test_maximality_examples():
    for n in range(1, 8):
        d = D.CoFinite.of(O, [elem(O, n, bit=0), elem(O, n, bit=1)])
        assert is_maximal_complete_sublattice(d)
    assert is_maximal_complete_sublattice(D.CoFinite.of(Q, [elem(Q, 0, 0, 1)]))
    assert is_maximal_complete_sublattice(D.CoFinite.of(Q, [elem(Q, 2, 3, 0), elem(Q, 2, 3, 1)]))


def test_maximality_rejects_limit_pairs():
    # with m = 0 the pair is not even closed: (n⋉0,·) is a limit of row n-1
    d = D.CoFinite.of(Q, [elem(Q, 2, 0, 0), elem(Q, 2, 0, 1)])
    res = is_complete_sublattice(d)
    assert not res and res.forcing.reason == "limit join"
    with pytest.raises(NotASublattice):
        is_maximal_complete_sublattice(d)
    # a strictly larger proper complete sublattice does exist
    assert is_complete_sublattice(D.CoFinite.of(Q, [elem(Q, 0, 0, 1)]))


def test_maximality_errors():
    with pytest.raises(NotProper):
        is_maximal_complete_sublattice(D.CoFinite.of(O, []))
    with pytest.raises(TypeError):
        is_maximal_complete_sublattice(generator_m(O))


def test_non_maximal_closed_cofinite():
    # excluding both (0,1) and (3,0),(3,1) is closed but sits below L - {(0,1)}
    d = D.CoFinite.of(O, [elem(O, 0, bit=1), elem(O, 3, bit=0), elem(O, 3, bit=1)])
    assert is_complete_sublattice(d)
    assert not is_maximal_complete_sublattice(d)


# -- certificates ------------------------------------------------------------------------------


def test_relative_generator_certificates():
    for fam in Family:
        cert = relative_generator_certificate(SymElem(fam, TOP, 0), generator_m(fam))
        assert cert.closure == generator_m(fam)
        assert cert.to_json()["kind"] == "relative-generator-witness"
    # an indispensable element: X = L minus the element
    a = elem(Q, 0, 0, 1)
    relative_generator_certificate(a, D.CoFinite.of(Q, [a]))


def test_certificate_failures():
    with pytest.raises(CertificateInvalid, match="already the whole"):
        relative_generator_certificate(elem(O, 1), D.whole(O))
    with pytest.raises(CertificateInvalid, match="not the whole"):
        relative_generator_certificate(elem(O, 1), D.Positive.of(O, [elem(O, 2)]))
