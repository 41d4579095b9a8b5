import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from pgca.linalg import Echelon, integer_row, null_space, rref


def _apply(rows, x):
    return [sum((v * x.get(c, 0) for c, v in r.items()), Fraction(0)) for r in rows]


def test_null_space_by_hand():
    # x0 + x1 = 0, x1 - 2 x2 = 0 -> span (-2, 2, 1)
    rows = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1), 2: Fraction(-2)}]
    basis = null_space(rows, 3)
    assert basis == [{2: 1, 1: 2, 0: -2}]


def test_null_space_identity_and_empty():
    assert null_space([{0: 1}, {1: 1}], 2) == []
    assert null_space([], 2) == [{0: 1}, {1: 1}]


def test_integer_row():
    assert integer_row({0: Fraction(1, 2), 3: Fraction(-1, 3)}) == {0: 3, 3: -2}


def test_echelon_rank():
    e = Echelon()
    assert e.add({0: 2, 1: 4})
    assert not e.add({0: 1, 1: 2})
    assert e.add({1: 1})
    assert e.rank == 2


rows_st = st.lists(
    st.dictionaries(st.integers(0, 6), st.integers(-4, 4).map(Fraction), max_size=4), max_size=7)


@settings(max_examples=300, deadline=None)
@given(rows_st)
def test_null_space_property(rows):
    n = 7
    basis = null_space(rows, n)
    for x in basis:
        assert all(v == 0 for v in _apply(rows, x))
    # rank-nullity against an independent rank count
    e = Echelon()
    for r in rows:
        e.add({c: v for c, v in r.items() if v})
    assert len(basis) == n - e.rank


def test_rref_depends_only_on_span():
    rng = random.Random(5)
    vs = [{c: Fraction(rng.randint(-3, 3)) for c in range(5)} for _ in range(3)]
    mixed = [
        {c: vs[0].get(c, 0) + 2 * vs[1].get(c, 0) for c in range(5)},
        {c: vs[1].get(c, 0) - vs[2].get(c, 0) for c in range(5)},
        vs[2],
    ]
    order = [4, 3, 2, 1, 0]
    assert rref(vs, order) == rref(mixed, order)
