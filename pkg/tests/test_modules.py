from fractions import Fraction

import pytest

from pgca import WhittakerHom, make_module
from pgca.algebra import H, I, J, L
from pgca.errors import ClosureError, ParamError
from pgca.modules import ModuleKind, Window, enumerate_window, quotient_reduce, submodule_membership
from pgca.pbw import W, PBWMonomial, act_gen, vector_of
from tests.conftest import PHI, XI

SING = WhittakerHom.of(1, -1, 2, 0, 0)


def mono(text):
    return PBWMonomial.parse(text)


def test_make_module_examples():
    assert make_module("generic", PHI, xi=(1, 0, 2)).kind is ModuleKind.GENERIC
    assert make_module("universal-central", PHI).central_mode == "formal"
    with pytest.raises(ClosureError):
        make_module("omega", WhittakerHom.of(0, 0, 0, 3, 0))


@pytest.mark.parametrize("kind,kwargs", [
    ("generic", {}),
    ("omega-tilde", {"xi": XI}),
    ("omega-tilde", {"c": 1}),
    ("universal-central", {"xi": XI}),
    ("omega", {"c": 1}),
])
def test_param_errors(kind, kwargs):
    with pytest.raises(ParamError):
        make_module(kind, SING, **kwargs)


@pytest.mark.parametrize("kind,phi", [
    ("gamma", WhittakerHom.of(0, 0, 0, 1, 0)),
    ("upsilon", WhittakerHom.of(0, 0, 0, 0, 1)),
    ("omega-tilde", WhittakerHom.of(0, 0, 0, 0, 1)),
])
def test_closure_errors(kind, phi):
    kwargs = {"xi": XI, "c": 0} if kind == "omega-tilde" else {}
    with pytest.raises(ClosureError):
        make_module(kind, phi, **kwargs)


def test_omega_span_not_closed_when_phi_i1_nonzero():
    # why omega refuses phi(I1) != 0: H1 . I_{-1} w = I_0 w + phi(H1) I_{-1} w stays,
    # but L1 . I_0 w = -phi(I1) w leaves the I/J span
    ctx = make_module("universal-centerless", WhittakerHom.of(0, 0, 1, 3, 0))
    assert act_gen(ctx, L(1), vector_of(I(0))) == W * -3


def test_window_generic_b1():
    ctx = make_module("generic", PHI, xi=XI)
    labels = [str(m) for m, _ in enumerate_window(ctx, Window(1))]
    assert labels == ["1", "L[0]^1", "H[0]^1", "I[0]^1", "J[0]^1", "L[-1]^1", "H[-1]^1", "I[-1]^1", "J[-1]^1"]
    assert [str(m) for m, _ in enumerate_window(ctx, 0)] == ["1"]


def test_window_sizes():
    free = make_module("universal-centerless", PHI)
    cent = make_module("universal-central", PHI)
    assert [len(enumerate_window(free, b)) for b in range(1, 5)] == [9, 49, 205, 725]
    assert [len(enumerate_window(cent, b)) for b in range(1, 5)] == [12, 82, 416, 1739]


def test_window_central_labels_b1():
    cent = make_module("universal-central", PHI)
    alphas = sorted(a for m, a in enumerate_window(cent, 1) if not m)
    assert alphas == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_window_omega_tilde_b1():
    ctx = make_module("omega-tilde", SING, xi=XI, c=5)
    assert [str(m) for m, _ in enumerate_window(ctx, 1)] == ["1", "L[0]^1", "L[-1]^1", "H[-1]^1"]


def test_window_quotients_drop_blocks():
    gamma = make_module("gamma", WhittakerHom.of(1, 1, 1, 0, 2))
    ups = make_module("upsilon", WhittakerHom.of(1, 1, 1, 2, 0))
    assert not any(m.i.parts for m, _ in enumerate_window(gamma, 3))
    assert not any(m.j.parts for m, _ in enumerate_window(ups, 3))
    assert any(m.j.parts for m, _ in enumerate_window(gamma, 3))


def test_quotient_reduce_examples():
    omega = make_module("omega", SING)
    assert quotient_reduce(omega, vector_of(I(0))) == 0
    tilde = make_module("omega-tilde", SING, xi=XI, c=5)
    assert quotient_reduce(tilde, vector_of(H(0), H(0), L(-1))) == vector_of(L(-1)) * 25
    gamma = make_module("gamma", WhittakerHom.of(1, 1, 1, 0, 2))
    assert quotient_reduce(gamma, vector_of(J(-1))) == vector_of(J(-1))
    generic = make_module("generic", PHI, xi=XI)
    assert quotient_reduce(generic, vector_of(I(0))) == vector_of(I(0))


def test_membership_examples():
    assert submodule_membership("omega", mono("I[0]^1"))
    assert not submodule_membership("omega", mono("H[-2]^1 L[-1]^1"))
    assert submodule_membership("upsilon", mono("J[-3]^1 I[-1]^1"))
    assert not submodule_membership("gamma", mono("J[-3]^1"))
    for kind in ("omega", "omega-tilde", "gamma", "upsilon"):
        assert not submodule_membership(kind, PBWMonomial())
    with pytest.raises(ValueError):
        submodule_membership("generic", PBWMonomial())


def test_weight_reading_misses_zero_modes():
    # the weight reading |i| + |j| > 0 leaves I_0 w out of the span ...
    assert not submodule_membership("omega", mono("I[0]^1"), reading="weight")
    assert submodule_membership("omega", mono("I[-1]^1"), reading="weight")
    # ... and that span is not closed: H1 . I_{-1} w has an I_0 w term
    ctx = make_module("universal-centerless", SING)
    image = act_gen(ctx, H(1), vector_of(I(-1)))
    assert image.coefficient(mono("I[0]^1")) == 1
    assert not all(submodule_membership("omega", m, reading="weight") for m in image.terms)


def test_h0_central_among_l_h_in_quotient():
    tilde = make_module("omega-tilde", SING, xi=XI, c=5)
    v = act_gen(tilde, H(0), vector_of(H(-1), L(-2)))
    assert v == vector_of(H(-1), L(-2)) * 5


def test_quotient_action_matches_parent():
    q = make_module("omega-tilde", SING, xi=XI, c=Fraction(1, 2))
    parent = q.parent()
    v = vector_of(H(-1)) + vector_of(I(0), L(-1)) * 3
    for g in (L(1), L(2), H(1), H(-1), L(-1), I(1), J(0)):
        assert quotient_reduce(q, act_gen(parent, g, v)) == act_gen(q, g, quotient_reduce(q, v))


def test_describe_is_json_ready():
    q = make_module("omega-tilde", SING, xi=("1/2", 0, 3), c="-2")
    assert q.describe() == {"kind": "omega-tilde", "phi": SING.to_dict(), "xi": ["1/2", "0", "3"], "c": "-2"}
