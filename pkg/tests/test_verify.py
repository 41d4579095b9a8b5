import json

import pytest

from pgca import algebra
from pgca.algebra import RL
from pgca.cli import main
from pgca.verify import monomials, run_suite, suite_checks


@pytest.fixture
def mutated(monkeypatch):
    """[L_1, L_2] doubled (antisymmetry kept, Jacobi broken)."""
    original = algebra._bracket_table

    def table(central, a, b):
        out = original(central, a, b)
        if a[0] == b[0] == RL and {a[1], b[1]} == {1, 2}:
            out = [(g, 2 * c) for g, c in out]
        return out

    algebra.clear_bracket_cache()
    monkeypatch.setattr(algebra, "_bracket_table", table)
    yield
    monkeypatch.undo()
    algebra.clear_bracket_cache()


def test_monomial_enumeration_counts():
    # 4-coloured partitions of 0..2 are 1, 4, 14; zero modes: 1 + 4 + 10 multisets
    assert len(monomials(2)) == (1 + 4 + 14) * 15
    assert len(monomials(1, zero_cap=0)) == 5


def test_unknown_suite():
    with pytest.raises(ValueError):
        suite_checks("everything")


def test_lemma_suite_passes():
    assert all(c.passed for c in run_suite("lemmas"))


def test_mutation_is_caught(mutated, capsys, tmp_path):
    out = tmp_path / "v.json"
    code = main(["verify", "--suite", "axioms", "--out", str(out)])
    capsys.readouterr()
    rep = json.loads(out.read_text())
    assert code == 1 and rep["result"]["failed"] > 0
    jacobi = next(c for c in rep["result"]["checks"] if c["name"] == "jacobi")
    assert not jacobi["passed"]
    assert "triple" in jacobi["counterexample"]


def test_cache_restored_after_mutation():
    assert dict(algebra.raw_bracket(False, (RL, 1), (RL, 2))) == {(RL, 3): 1}
