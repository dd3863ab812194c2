from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latgen.finite import chain, from_covers
from latgen.symbolic.elements import Family, sym_join, sym_meet
from latgen.symbolic.omega_op import (
    EventuallyConstantSeq,
    EventuallyPeriodicSeq,
    encode_join,
    encode_meet,
    omega_op_eval,
)

from strategies import corpus_lattices, elems

B2 = from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_constant_sequence():
    assert omega_op_eval(EventuallyConstantSeq([], 2), B2) == 2


def test_meet_encodings():
    assert omega_op_eval(encode_meet(1, 2), B2) == 0
    # prefix [x, y] followed by the constant x∧y
    assert omega_op_eval(EventuallyConstantSeq([1, 2], 0), B2) == 0


def test_join_encoding():
    assert omega_op_eval(encode_join([1, 2]), B2) == 3
    assert omega_op_eval(encode_join([0, 1]), chain(3)) == 1


def test_odd_prefix_pairs_across_the_boundary():
    # 1, 2, 2, 2, ... pairs as (1,2), (2,2), ...
    seq = EventuallyConstantSeq([1], 2)
    assert seq.pairs()[0] == (1, 2)
    assert omega_op_eval(seq, B2) == 2  # (1∧2) ∨ 2


def test_indexing():
    seq = EventuallyPeriodicSeq((5,), (1, 2))
    assert [seq[i] for i in range(6)] == [5, 1, 2, 1, 2, 1]
    with pytest.raises(IndexError):
        seq[-1]
    with pytest.raises(ValueError):
        EventuallyPeriodicSeq((), ())
    with pytest.raises(ValueError):
        encode_join([])


@given(corpus_lattices(), st.data())
def test_against_direct_evaluation(lat, data):
    pool = st.integers(0, lat.size - 1)
    prefix = data.draw(st.lists(pool, max_size=7))
    period = data.draw(st.lists(pool, min_size=1, max_size=3))
    seq = EventuallyPeriodicSeq(tuple(prefix), tuple(period))
    # evaluate over a long stretch; periodicity makes it exact
    vals = [seq[i] for i in range(2 * (len(prefix) + 6 * len(period)))]
    direct = reduce(lambda a, b: lat.join_t[a][b], (lat.meet_t[vals[2 * i]][vals[2 * i + 1]] for i in range(len(vals) // 2)))
    assert omega_op_eval(seq, lat) == direct


@given(st.sampled_from(list(Family)), st.data())
def test_symbolic_encodings(family, data):
    xs = data.draw(st.lists(elems(family), min_size=2, max_size=6))
    assert omega_op_eval(encode_meet(xs[0], xs[1]), family) == sym_meet(xs[0], xs[1])
    assert omega_op_eval(encode_join(xs), family) == reduce(sym_join, xs)
