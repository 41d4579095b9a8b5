

from pgca import WhittakerHom, make_module
from pgca.algebra import AlgebraKind, H, I, L
from pgca.pbw import W, ModuleVector, PBWMonomial, normal_form_u, vector_of
from pgca.solver import (
    closed_form_check,
    closed_form_words,
    reducibility_probe,
    second_closed_form_check,
    solution_embeds,
    type_scan,
    verify_vector,
    whittaker_solve,
    window_functional_ok,
)
from tests.conftest import PHI

TILDE_XI = (1, 2, 0)


def tilde(h1):
    return make_module("omega-tilde", WhittakerHom.of(1, -1, h1, 0, 0), xi=TILDE_XI, c=2)


def test_generic_nonsingular(generic):
    rep = whittaker_solve(generic, 4)
    assert rep.dimension == 1 and rep.verified
    assert rep.basis[0] == W


def test_universal_central_b3(central):
    rep = whittaker_solve(central, 3)
    assert rep.dimension == 20 and rep.verified
    # every solution is C^alpha w
    assert all(list(v.terms) == [PBWMonomial()] for v in rep.basis)


def test_singular_contains_i0():
    ctx = make_module("universal-centerless", WhittakerHom.of(1, -1, 2, 0, 5))
    rep = whittaker_solve(ctx, 2)
    assert rep.dimension >= 2
    probe = vector_of(I(0))
    assert verify_vector(ctx, probe)
    assert solution_embeds(whittaker_solve(ctx, 0), rep)


def test_wrong_type_gives_nothing(generic):
    psi = WhittakerHom(**{**PHI.to_values(), "I1": PHI.I1 + 1})
    assert whittaker_solve(generic, 3, psi).dimension == 0


def test_verify_vector_examples(generic):
    assert verify_vector(generic, W)
    assert not verify_vector(generic, vector_of(L(-1)))
    assert verify_vector(tilde(0), vector_of(H(-1)))
    assert not verify_vector(tilde(1), vector_of(H(-1)))


def test_probe_examples(generic):
    assert reducibility_probe(generic, 4).verdict == "no-witness-at-bound"
    both = make_module("universal-centerless", WhittakerHom.of(1, -1, 2, 0, 0))
    res = reducibility_probe(both, 2)
    assert res.verdict == "reducible-witness" and res.witness_verified
    res = reducibility_probe(tilde(0), 2)
    assert res.verdict == "reducible-witness"
    assert res.witness == vector_of(H(-1))


def test_probe_universal_central_excludes_central_multiples(central):
    res = reducibility_probe(central, 2)
    assert res.verdict == "no-witness-at-bound"
    assert res.solution_dimension == 10


def test_centerless_omega_has_h0_witness():
    # the centerless I/J quotient has H_0 w as a Whittaker vector for any phi(H1)
    for h1 in (0, 1, 5):
        ctx = make_module("omega", WhittakerHom.of(1, -1, h1, 0, 0))
        res = reducibility_probe(ctx, 2)
        assert res.verdict == "reducible-witness"
        assert verify_vector(ctx, vector_of(H(0)))


def test_type_scan(generic):
    report = type_scan(generic, 2)
    assert report["passed"] and len(report["scan"]) == 10
    assert type_scan(generic, 2, [PHI])["scan"][0]["dimension"] == 1
    zero = WhittakerHom()
    assert type_scan(generic, 2, [zero])["scan"][0]["dimension"] == 0


def test_closed_form_examples():
    assert closed_form_words(0, 1, "I", "L") == {(I(1),): -1}
    assert closed_form_check(0, 1, "I", "L")
    assert closed_form_check(1, 2, "J", "H")
    assert closed_form_check(3, 0, "I", "H")


def test_closed_form_sign_matters():
    # the I/H identity carries (-1)^s; without it the comparison must fail
    words = closed_form_words(1, 2, "I", "H")
    flipped = {w: abs(c) for w, c in words.items()}
    brute = normal_form_u(AlgebraKind.CENTRAL, {(I(2), H(-1), H(-1)): 1, (H(-1), H(-1), I(2)): -1})
    assert normal_form_u(AlgebraKind.CENTRAL, words) == brute
    assert normal_form_u(AlgebraKind.CENTRAL, flipped) != brute


def test_second_closed_forms():
    for k in range(3):
        for a in range(1, 4):
            for fam in "IJ":
                for src in "LH":
                    assert second_closed_form_check(k, a, fam, src)


def test_window_invariance(generic, central):
    for ctx in (generic, central, tilde(1)):
        assert window_functional_ok(ctx, 3)


def test_window_monotone(central):
    small, large = whittaker_solve(central, 2), whittaker_solve(central, 3)
    assert solution_embeds(small, large)


def test_report_json(generic):
    data = whittaker_solve(generic, 2).to_json()
    assert data["dimension"] == 1 and data["basis"] == ["1 * 1"]
    assert data["type"] == PHI.to_dict()
    assert ModuleVector.parse(data["basis"][0]) == W
