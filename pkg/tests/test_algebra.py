from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgca.algebra import (
    AlgebraKind,
    C1g,
    C3g,
    GeneratorId,
    H,
    I,
    J,
    L,
    LieElement,
    WhittakerHom,
    all_generators,
    bracket_elem,
    bracket_gen,
    parse_generator,
    phi_eval,
)
from pgca.errors import DomainError, ParseError

CENT, FREE = AlgebraKind.CENTRAL, AlgebraKind.CENTERLESS


def el(text):
    return LieElement.parse(text)


def test_bracket_table_examples():
    assert bracket_gen(CENT, L(1), L(-1)) == el("-2*L[0] + 1*C1")
    assert bracket_gen(CENT, L(2), H(-2)) == el("-2*H[0] + 4*C2")
    assert bracket_gen(CENT, I(5), J(-3)) == 0
    assert bracket_gen(CENT, H(0), I(7)) == el("1*I[7]")
    assert bracket_gen(FREE, H(1), H(-1)) == 0
    assert bracket_gen(CENT, H(1), H(-1)) == el("1*C3")


def test_bracket_table_by_hand():
    # each line of the table at one sample point
    assert bracket_gen(CENT, L(3), L(-3)) == el("-6*L[0] + 27*C1")
    assert bracket_gen(CENT, L(-2), H(5)) == el("5*H[3]")
    assert bracket_gen(CENT, L(2), I(-1)) == el("-3*I[1]")
    assert bracket_gen(CENT, L(0), J(4)) == el("4*J[4]")
    assert bracket_gen(CENT, H(-2), J(1)) == el("-1*J[-1]")
    assert bracket_gen(CENT, H(2), H(-2)) == el("2*C3")
    assert bracket_gen(CENT, I(1), L(-1)) == el("-2*I[0]")
    assert bracket_gen(CENT, C1g, L(4)) == 0


def test_centerless_rejects_central():
    with pytest.raises(DomainError):
        bracket_gen(FREE, C1g, L(0))


def test_bracket_elem_examples():
    x = el("1*L[1] + 1*H[1]")
    assert bracket_elem(CENT, x, el("1*I[0]")) == 0
    assert bracket_elem(CENT, x, x) == 0
    assert bracket_elem(CENT, el("2*L[1]"), el("1*L[-1]")) == el("-4*L[0] + 2*C1")


def test_phi_eval():
    phi = WhittakerHom.of(1, -1, 2, 3, 5)
    assert phi_eval(phi, L(3)) == 0
    assert phi_eval(phi, I(1)) == 3
    assert phi_eval(phi, L(2)) == -1
    assert phi_eval(phi, J(2)) == 0
    with pytest.raises(DomainError):
        phi_eval(phi, L(0))
    with pytest.raises(DomainError):
        phi_eval(phi, C3g)


def test_nonsingular_flag():
    assert WhittakerHom.of(0, 0, 0, 1, 1).nonsingular
    assert not WhittakerHom.of(1, 1, 1, 0, 1).nonsingular


def test_perturbations():
    phi = WhittakerHom.of(1, -1, 2, 3, 5)
    cands = phi.perturbations()
    assert len(cands) == 10
    assert phi not in cands
    assert WhittakerHom.of(1, -1, 3, 3, 5) in cands


def test_phi_dict_round_trip():
    phi = WhittakerHom.of("1/2", -1, 2, 0, 5)
    assert WhittakerHom.from_dict(phi.to_dict()) == phi
    with pytest.raises(ValueError):
        WhittakerHom.from_dict({"L3": "1"})


def test_generator_text():
    for text in ("L[-3]", "H[0]", "I[2]", "J[-1]", "C1", "C2", "C3"):
        assert str(parse_generator(text)) == text
    assert parse_generator("L[+2]") == L(2)


@pytest.mark.parametrize("text,pos", [("X[1]", 0), ("L(1)", 1), ("L[x]", 2), ("L[12", 4), ("C7", 1), ("L[ 1]", 2)])
def test_generator_parse_error_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_generator(text)
    assert info.value.position == pos


def test_antisymmetry_small():
    gens = list(all_generators(3))
    for a in gens:
        for b in gens:
            assert bracket_gen(CENT, a, b) == -bracket_gen(CENT, b, a)


gen_st = st.builds(GeneratorId, st.sampled_from("LHIJ"), st.integers(-8, 8))
elem_st = st.dictionaries(gen_st, st.integers(-5, 5), max_size=4).map(LieElement)


@settings(max_examples=200, deadline=None)
@given(elem_st, elem_st, elem_st)
def test_jacobi_random_elements(x, y, z):
    for kind in (CENT, FREE):
        total = (bracket_elem(kind, x, bracket_elem(kind, y, z))
                 + bracket_elem(kind, y, bracket_elem(kind, z, x))
                 + bracket_elem(kind, z, bracket_elem(kind, x, y)))
        assert total == 0


@settings(max_examples=200, deadline=None)
@given(elem_st, elem_st, st.integers(-3, 3))
def test_bilinear(x, y, k):
    assert bracket_elem(CENT, x * k + y, y) == bracket_elem(CENT, x, y) * k


@settings(max_examples=200, deadline=None)
@given(elem_st)
def test_lie_element_round_trip(x):
    assert LieElement.parse(str(x)) == x


def test_lie_element_text_order():
    x = LieElement({C1g: 1, J(0): 2, L(-1): Fraction(1, 3)})
    assert str(x) == "1/3*L[-1] + 2*J[0] + 1*C1"
