"""Hypothesis strategies and brute oracles shared by the test modules."""
from itertools import combinations

from hypothesis import strategies as st

from latgen.finite import chain, labeled_lattice_keys, lattice_from_key, product
from latgen.symbolic import desc as D
from latgen.symbolic.elements import TOP, Family, OrdK, SymElem


@st.composite
def corpus_lattices(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    keys = labeled_lattice_keys(n)
    return lattice_from_key(keys[draw(st.integers(0, len(keys) - 1))], n)


@st.composite
def product_lattices(draw):
    a = draw(corpus_lattices(max_n=4))
    b = draw(st.one_of(corpus_lattices(max_n=3), st.integers(1, 3).map(chain)))
    return product(a, b)


lattices = st.one_of(corpus_lattices(), product_lattices())


@st.composite
def lattice_with_masks(draw, count=2, structures=None):
    lat = draw(structures or lattices)
    full = (1 << lat.size) - 1
    masks = [draw(st.integers(0, full)) for _ in range(count)]
    return lat, masks


# -- naive finite oracles -----------------------------------------------------------


def naive_closure(s, bits, cfg):
    """Add every pairwise meet (and join) until nothing changes."""
    cur = {i for i in range(s.size) if bits >> i & 1}
    if cfg.include_empty_meet:
        cur.add(s.top)
    if cfg.respect_joins and cfg.include_empty_join:
        cur.add(s.bottom)
    while True:
        new = set(cur)
        for x in cur:
            for y in cur:
                new.add(int(s.meet[x][y]))
                if cfg.respect_joins:
                    new.add(int(s.join[x][y]))
        if new == cur:
            return sum(1 << i for i in cur)
        cur = new


def naive_gamma(s, cfg):
    n = s.size
    full = (1 << n) - 1
    table = [naive_closure(s, x, cfg) for x in range(1 << n)]
    return {
        a for a in range(n)
        if all(table[x] == full for x in range(1 << n) if table[x | 1 << a] == full)
    }


def naive_maximal(s, cfg):
    n = s.size
    full = (1 << n) - 1
    closed = [x for x in range(1 << n) if x != full and naive_closure(s, x, cfg) == x]
    return sorted(x for x in closed if not any(x != y and x & y == x for y in closed))


def naive_meet_reducible(s, include_empty_meet):
    """Search every subset Y avoiding a for a = ⋀Y."""
    out = set()
    for a in range(s.size):
        others = [y for y in range(s.size) if y != a]
        for r in range(0 if include_empty_meet else 1, len(others) + 1):
            if any(_meet_all(s, ys) == a for ys in combinations(others, r)):
                out.add(a)
                break
    return out


def _meet_all(s, ys):
    acc = s.top
    for y in ys:
        acc = int(s.meet[acc][y])
    return acc


# -- symbolic strategies ------------------------------------------------------------


def ords(family, maxp=5):
    top = st.just(TOP)
    if family is Family.OMEGA:
        pairs = st.integers(0, maxp).map(lambda r: OrdK.pair(0, r))
    else:
        pairs = st.builds(OrdK.pair, st.integers(0, maxp), st.integers(0, maxp))
    return st.one_of(pairs, pairs, pairs, top)


def elems(family, maxp=5):
    return st.builds(lambda k, b: SymElem(family, k, b), ords(family, maxp), st.integers(0, 1))


def blocks(family, maxp=5):
    bit = st.integers(0, 1)
    opts = [
        st.builds(D.Point, ords(family, maxp), bit),
        st.builds(D.RowTail, st.just(0) if family is Family.OMEGA else st.integers(0, maxp), st.integers(0, maxp), bit),
        st.builds(D.FullTail, ords(family, maxp), bit),
    ]
    if family is Family.OMEGA_SQ:
        opts.append(st.builds(D.ZeroColTail, st.integers(0, maxp), bit))
    return st.one_of(*opts)


@st.composite
def raw_descriptions(draw, family=None, maxp=5, max_blocks=6):
    family = family or draw(st.sampled_from(list(Family)))
    return family, draw(st.lists(blocks(family, maxp), max_size=max_blocks))


def raw_member(raw_blocks, e):
    """Membership straight from the block definitions."""
    k = e.k
    for b in raw_blocks:
        if b.bit != e.bit:
            continue
        if isinstance(b, D.Point) and b.k == k:
            return True
        if isinstance(b, D.RowTail) and not k.top and k.q == b.n and k.r >= b.m0:
            return True
        if isinstance(b, D.ZeroColTail) and not k.top and k.r == 0 and k.q >= b.n0:
            return True
        if isinstance(b, D.FullTail) and (k.top or (not b.k0.top and (k.q, k.r) >= (b.k0.q, b.k0.r))):
            return True
    return False
