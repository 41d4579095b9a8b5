"""Invariant suites: algebra axioms, commutator identities, star-action bounds and
submodule closure.  Each check reports pass/fail plus the first counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from . import algebra
from .algebra import CENTRAL, RH, RI, RJ, RL, GeneratorId, WhittakerHom
from .modules import ModuleCtx, ModuleKind, enumerate_window_raw, make_module, submodule_membership
from .pbw import (
    Key,
    ModuleVector,
    PBWMonomial,
    RawVec,
    _add,
    act_word,
    key_functional,
    split_key,
    straighten,
)
from .solver import (
    GENERATING,
    closed_form_check,
    second_closed_form_check,
)

SUITES = ("axioms", "lemmas", "bounds", "closure")

DEFAULT_PHI = WhittakerHom.of(1, -1, 2, 3, 5)
DEFAULT_XI = (Fraction(1), Fraction(2), Fraction(3))

# "monomials of weight <= w": zero-mode factors add no weight, so their
# number is capped separately
ZERO_CAP = 2


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    counterexample: Optional[str] = None
    seconds: float = 0.0

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _run(name: str, cases: Iterator[Tuple[bool, Callable[[], str]]]) -> Check:
    start = time.perf_counter()
    n = 0
    for ok, describe in cases:
        n += 1
        if not ok:
            return Check(name, False, n, describe(), time.perf_counter() - start)
    return Check(name, True, n, None, time.perf_counter() - start)


# --- raw helpers ---------------------------------------------------------------

def _gens(max_abs: int, central: bool) -> List[Tuple[int, int]]:
    out = [(r, m) for r in (RL, RH, RI, RJ) for m in range(-max_abs, max_abs + 1)]
    if central:
        out += [(CENTRAL, s) for s in (1, 2, 3)]
    return out


def _br(central: bool, x: Dict, y: Dict) -> Dict:
    out: Dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for g, c in algebra.raw_bracket(central, a, b):
                _add(out, g, ca * cb * c)
    return out


def _fmt_raw(r) -> str:
    return str(GeneratorId.from_raw(r))


def monomials(max_weight: int, zero_cap: int = ZERO_CAP, ranks=(RJ, RI, RH, RL)) -> List[PBWMonomial]:
    """All monomials with weight <= max_weight and at most zero_cap zero modes."""
    types = [(r, -p) for r in ranks for p in range(1, max_weight + 1)]
    zeros = [(r, 0) for r in ranks]
    out: List[PBWMonomial] = []

    def grow(start, budget, acc):
        for nz in range(zero_cap + 1):
            for zs in combinations_with_replacement(zeros, nz):
                out.append(PBWMonomial(acc + list(zs)))
        for t in range(start, len(types)):
            f = types[t]
            if -f[1] <= budget:
                acc.append(f)
                grow(t, budget + f[1], acc)
                acc.pop()

    grow(0, max_weight, [])
    return sorted(set(out), key=lambda m: m.sort_key())


def _act_raw_vec(ctx: ModuleCtx, g, vec: RawVec) -> RawVec:
    out: RawVec = {}
    for key, c in vec.items():
        for k2, c2 in ctx.act_raw(g, key).items():
            _add(out, k2, c * c2)
    return out


def _star_raw(ctx: ModuleCtx, g, key: Key) -> RawVec:
    image = dict(ctx.act_raw(g, key))
    shift = ctx.phi.raw_value(g)
    if shift:
        _add(image, key, -shift)
    return image


def _vec_str(vec: RawVec) -> str:
    return str(ModuleVector.from_raw(vec))


# --- axioms ----------------------------------------------------------------------

def check_antisymmetry(max_abs: int = 6) -> Check:
    def cases():
        for central in (False, True):
            gens = _gens(max_abs, central)
            for a in gens:
                for b in gens:
                    ab = dict(algebra.raw_bracket(central, a, b))
                    ba = dict(algebra.raw_bracket(central, b, a))
                    ok = ab == {g: -c for g, c in ba.items()}
                    yield ok, lambda a=a, b=b, central=central: (
                        f"{'central' if central else 'centerless'} [{_fmt_raw(a)}, {_fmt_raw(b)}]")
    return _run("antisymmetry", cases())


def check_jacobi(max_abs: int = 4) -> Check:
    def cases():
        for central in (False, True):
            gens = _gens(max_abs, central)
            for a, b, c in product(gens, repeat=3):
                x, y, z = {a: 1}, {b: 1}, {c: 1}
                total: Dict = {}
                for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
                    for g, v in _br(central, p, _br(central, q, r)).items():
                        _add(total, g, v)
                yield not total, lambda a=a, b=b, c=c, central=central: (
                    f"{'central' if central else 'centerless'} triple "
                    f"({_fmt_raw(a)}, {_fmt_raw(b)}, {_fmt_raw(c)})")
    return _run("jacobi", cases())


def check_grading(max_abs: int = 6) -> Check:
    def cases():
        for central in (False, True):
            gens = [g for g in _gens(max_abs, False)]
            for a in gens:
                for b in gens:
                    total = a[1] + b[1]
                    ok = True
                    for g, _ in algebra.raw_bracket(central, a, b):
                        if g[0] == CENTRAL:
                            ok = ok and total == 0 and central
                        else:
                            ok = ok and g[1] == total
                    yield ok, lambda a=a, b=b: f"[{_fmt_raw(a)}, {_fmt_raw(b)}]"
    return _run("grading", cases())


def check_phi_homomorphism(phi: WhittakerHom = DEFAULT_PHI, max_total: int = 6) -> Check:
    def cases():
        pos = [(r, m) for r in (RL, RH, RI, RJ) for m in range(1, max_total)]
        for a in pos:
            for b in pos:
                if a[1] + b[1] > max_total:
                    continue
                val = sum((c * phi.raw_value(g) for g, c in algebra.raw_bracket(True, a, b)), Fraction(0))
                yield val == 0, lambda a=a, b=b: f"phi([{_fmt_raw(a)}, {_fmt_raw(b)}]) != 0"
    return _run("phi-homomorphism", cases())


def check_module_law(phi: WhittakerHom = DEFAULT_PHI, max_abs: int = 3, max_weight: int = 3,
                     zero_cap: int = 1) -> Check:
    """x(y v) - y(x v) == [x, y] v on basis vectors."""
    ctx = make_module(ModuleKind.UNIVERSAL_CENTRAL, phi)
    gens = _gens(max_abs, False)
    monos = monomials(max_weight, zero_cap)

    def cases():
        for n, x in enumerate(gens):
            for y in gens[n + 1:]:
                br = algebra.raw_bracket(True, x, y)
                for m in monos:
                    v = {tuple(m): Fraction(1)}
                    lhs = _act_raw_vec(ctx, x, _act_raw_vec(ctx, y, v))
                    for k, c in _act_raw_vec(ctx, y, _act_raw_vec(ctx, x, v)).items():
                        _add(lhs, k, -c)
                    rhs: RawVec = {}
                    for g, c in br:
                        for k, c2 in _act_raw_vec(ctx, g, v).items():
                            _add(rhs, k, c * c2)
                    yield lhs == rhs, lambda x=x, y=y, m=m: f"[{_fmt_raw(x)}, {_fmt_raw(y)}] on {m}"
    return _run("module-law", cases())


def random_word(rng: random.Random, max_len: int = 6, max_abs: int = 4) -> List[GeneratorId]:
    n = rng.randint(0, max_len)
    return [GeneratorId(rng.choice("LHIJ"), rng.randint(-max_abs, max_abs)) for _ in range(n)]


def check_confluence(runs: int = 500, seed: int = 20240611, phi: WhittakerHom = DEFAULT_PHI) -> Check:
    """Leftmost- and rightmost-redex rewriting agree byte for byte (and with the engine)."""
    ctx = make_module(ModuleKind.UNIVERSAL_CENTRAL, phi)
    rng = random.Random(seed)

    def cases():
        for _ in range(runs):
            word = random_word(rng)
            left = str(straighten(ctx, word, "left"))
            right = str(straighten(ctx, word, "right"))
            engine = str(act_word(ctx, word))
            yield left == right == engine, lambda word=word, left=left, right=right: (
                f"word {' '.join(map(str, word))}: {left} vs {right}")
    return _run("confluence", cases())


# --- lemmas -----------------------------------------------------------------------

def check_closed_forms(ks=range(4), As=range(1, 6)) -> Check:
    def cases():
        for k in ks:
            for a in As:
                for fam in "IJ":
                    for tgt in "LH":
                        yield closed_form_check(k, a, fam, tgt), lambda k=k, a=a, fam=fam, tgt=tgt: (
                            f"[{fam}_{k + 1}, {tgt}_{-k}^{a}]")
    return _run("closed-forms", cases())


def check_second_closed_forms(ks=range(4), As=range(1, 6)) -> Check:
    def cases():
        for k in ks:
            for a in As:
                for fam in "IJ":
                    for src in "LH":
                        yield second_closed_form_check(k, a, fam, src), lambda k=k, a=a, fam=fam, src=src: (
                            f"[{src}_{k + 1}, {fam}_{-k}^{a}]")
    return _run("closed-forms-ideal", cases())


def _maxdeg(vec: RawVec) -> float:
    return max((split_key(k)[0].weight for k in vec), default=float("-inf"))


def check_degree_drop(phi: WhittakerHom = DEFAULT_PHI, max_n: int = 4, max_weight: int = 4) -> Check:
    """maxdeg([F_n, u] w) <= |u| - n + 1 for F in {I, J}; likewise G in {L, H} on J^j I^i H^h."""
    ctx = make_module(ModuleKind.UNIVERSAL_CENTRAL, phi)
    all_monos = monomials(max_weight)
    no_l = [m for m in all_monos if not m.l.parts]

    def cases():
        for ranks, monos in (((RI, RJ), all_monos), ((RL, RH), no_l)):
            for rank in ranks:
                for n in range(1, max_n + 1):
                    g = (rank, n)
                    for m in monos:
                        # [g, u] w = g.(u w) - phi(g) u w
                        image = _star_raw(ctx, g, tuple(m))
                        ok = _maxdeg(image) <= m.weight - n + 1
                        yield ok, lambda g=g, m=m, image=image: (
                            f"[{_fmt_raw(g)}, {m}] w = {_vec_str(image)}")
    return _run("degree-drop", cases())


# --- bounds -------------------------------------------------------------------------

def _bounds_contexts(phi: WhittakerHom):
    return [make_module(ModuleKind.UNIVERSAL_CENTERLESS, phi),
            make_module(ModuleKind.UNIVERSAL_CENTRAL, phi)]


def check_functional_monotone(phi: WhittakerHom = DEFAULT_PHI, max_weight: int = 5,
                              max_mode: int = 6) -> Check:
    """Every term of g * (m w) has functional <= that of m, g in {L,H,I,J} x {1..max_mode}."""
    monos = monomials(max_weight)

    def cases():
        for ctx in _bounds_contexts(phi):
            for m in monos:
                n0 = key_functional(tuple(m))
                for rank in (RL, RH, RI, RJ):
                    for n in range(1, max_mode + 1):
                        g = (rank, n)
                        image = _star_raw(ctx, g, tuple(m))
                        bad = [k for k in image if key_functional(k) > n0]
                        yield not bad, lambda g=g, m=m, bad=bad, ctx=ctx: (
                            f"{ctx.kind.value}: {_fmt_raw(g)} * {m} has term {split_key(bad[0])}")
    return _run("functional-monotone", cases())


def check_vanishing(phi: WhittakerHom = DEFAULT_PHI, max_weight: int = 5, extra: int = 6) -> Check:
    """E_n * (m w) == 0 whenever n > |m| + 2."""
    monos = monomials(max_weight)

    def cases():
        for ctx in _bounds_contexts(phi):
            for m in monos:
                for rank in (RL, RH, RI, RJ):
                    for n in range(m.weight + 3, m.weight + extra + 1):
                        g = (rank, n)
                        image = _star_raw(ctx, g, tuple(m))
                        yield not image, lambda g=g, m=m, image=image, ctx=ctx: (
                            f"{ctx.kind.value}: {_fmt_raw(g)} * {m} = {_vec_str(image)}")
    return _run("vanishing", cases())


# --- closure -----------------------------------------------------------------------

def quotient_contexts() -> List[ModuleCtx]:
    """One valid context per quotient kind (plus centered gamma / upsilon)."""
    return [
        make_module(ModuleKind.OMEGA, WhittakerHom.of(1, -1, 2, 0, 0)),
        make_module(ModuleKind.OMEGA_TILDE, WhittakerHom.of(1, -1, 2, 0, 0), xi=DEFAULT_XI, c=5),
        make_module(ModuleKind.GAMMA, WhittakerHom.of(1, -1, 2, 0, 5)),
        make_module(ModuleKind.UPSILON, WhittakerHom.of(1, -1, 2, 3, 0)),
        make_module(ModuleKind.GAMMA, WhittakerHom.of(1, -1, 2, 0, 5), xi=DEFAULT_XI),
        make_module(ModuleKind.UPSILON, WhittakerHom.of(1, -1, 2, 3, 0), xi=DEFAULT_XI),
    ]


def all_contexts() -> List[ModuleCtx]:
    phi = DEFAULT_PHI
    return [
        make_module(ModuleKind.UNIVERSAL_CENTERLESS, phi),
        make_module(ModuleKind.UNIVERSAL_CENTRAL, phi),
        make_module(ModuleKind.GENERIC, phi, xi=DEFAULT_XI),
    ] + quotient_contexts()


def _describe(ctx: ModuleCtx) -> str:
    return ctx.kind.value + ("" if ctx.xi is None else " (central)")


def _in_submodule(qctx: ModuleCtx, vec: RawVec) -> bool:
    if qctx.kind is ModuleKind.OMEGA_TILDE:
        return not qctx.reduce_raw(vec)
    return all(submodule_membership(qctx.kind, split_key(k)[0]) for k in vec)


def _spanning(qctx: ModuleCtx, max_weight: int) -> List[RawVec]:
    out: List[RawVec] = []
    for m in monomials(max_weight):
        if submodule_membership(qctx.kind, m):
            out.append({tuple(m): Fraction(1)})
        elif qctx.kind is ModuleKind.OMEGA_TILDE and not m.i.parts and not m.j.parts:
            # (H_0 - c) u w for u free of H_0, I, J
            if m.h.mult(0) == 0:
                key = tuple(m)
                out.append({tuple(sorted(key + ((RH, 0),))): Fraction(1), key: -qctx.c})
    return out


def check_submodule_closure(max_weight: int = 4, max_abs: int = 3) -> Check:
    """Acting in the parent module never leaves the submodule span."""

    def cases():
        for q in quotient_contexts():
            parent = q.parent()
            gens = _gens(max_abs, False)
            for vec in _spanning(q, max_weight):
                for g in gens:
                    image = _act_raw_vec(parent, g, vec)
                    yield _in_submodule(q, image), lambda q=q, g=g, vec=vec, image=image: (
                        f"{_describe(q)}: {_fmt_raw(g)} . ({_vec_str(vec)}) = {_vec_str(image)}")
    return _run("submodule-closure", cases())


def check_properness() -> Check:
    def cases():
        for kind in (ModuleKind.OMEGA, ModuleKind.OMEGA_TILDE, ModuleKind.GAMMA, ModuleKind.UPSILON):
            yield not submodule_membership(kind, PBWMonomial()), lambda kind=kind: f"{kind.value} contains w"
    return _run("properness", cases())


def check_quotient_compatibility(samples: int = 200, seed: int = 7) -> Check:
    """reduce(g . v) in the parent equals g . reduce(v) in the quotient."""
    rng = random.Random(seed)

    def cases():
        for q in quotient_contexts():
            parent = q.parent()
            pool = monomials(3)
            for _ in range(samples):
                vec: RawVec = {}
                for _ in range(rng.randint(1, 4)):
                    _add(vec, tuple(rng.choice(pool)), Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
                g = (rng.choice((RL, RH, RI, RJ)), rng.randint(-3, 3))
                lhs = q.reduce_raw(_act_raw_vec(parent, g, vec))
                rhs = _act_raw_vec(q, g, q.reduce_raw(vec))
                yield lhs == rhs, lambda q=q, g=g, vec=vec: (
                    f"{_describe(q)}: {_fmt_raw(g)} on {_vec_str(vec)}")
    return _run("quotient-compatibility", cases())


def check_window_closure(max_bound: int = 5) -> Check:
    """Star actions of L1, L2, H1, I1, J1 map V_B into V_B."""

    def cases():
        for ctx in all_contexts():
            keys = enumerate_window_raw(ctx, max_bound)
            labels = set(keys)
            for key in keys:
                n0 = key_functional(key)
                for g in GENERATING:
                    image = _star_raw(ctx, g, key)
                    bad = [k for k in image if key_functional(k) > n0 or k not in labels]
                    yield not bad, lambda ctx=ctx, g=g, key=key, bad=bad: (
                        f"{_describe(ctx)}: {_fmt_raw(g)} * {split_key(key)} -> {split_key(bad[0])}")
    return _run("window-closure", cases())


# --- suites ------------------------------------------------------------------------

def suite_checks(name: str) -> List[Callable[[], Check]]:
    table = {
        "axioms": [check_antisymmetry, check_jacobi, check_grading, check_phi_homomorphism,
                   check_module_law, check_confluence],
        "lemmas": [check_closed_forms, check_second_closed_forms, check_degree_drop],
        "bounds": [check_functional_monotone, check_vanishing],
        "closure": [check_submodule_closure, check_properness, check_quotient_compatibility,
                    check_window_closure],
    }
    if name == "all":
        return [c for s in SUITES for c in table[s]]
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return table[name]


def run_suite(name: str) -> List[Check]:
    return [fn() for fn in suite_checks(name)]
