"""Whittaker vectors on truncation windows, reducibility probes and the
closed-form commutator oracles.

The star action of each generator E in {L1, L2, H1, I1, J1} never raises the
truncation functional, so the window V_B is invariant and the Whittaker
equations restricted to V_B form a finite exact linear system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    CENTRAL,
    AlgebraKind,
    GeneratorId,
    WhittakerHom,
    bracket_gen,
    H,
    I,
    J,
    L,
)
from .errors import PGCAError
from .linalg import Echelon, kernel_from_echelon, rref
from .modules import ModuleCtx, Window, enumerate_window_raw
from .pbw import (
    ModuleVector,
    W,
    _add,
    act_word,
    key_functional,
    normal_form_u,
    straighten_on,
)

GENERATING = ((3, 1), (3, 2), (2, 1), (1, 1), (0, 1))  # L1, L2, H1, I1, J1 as raw


class WindowEscape(PGCAError, RuntimeError):
    """A star action left the truncation window (should be impossible)."""


@dataclass(frozen=True)
class SolveReport:
    context: Dict[str, object]
    bound: int
    psi: WhittakerHom
    basis: Tuple[ModuleVector, ...]
    verified: bool
    window_size: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> Dict[str, object]:
        return {
            "context": self.context,
            "bound": self.bound,
            "type": self.psi.to_dict(),
            "dimension": self.dimension,
            "window_size": self.window_size,
            "basis": [str(v) for v in self.basis],
            "verified": self.verified,
        }


def _bound(window) -> int:
    return window.bound if isinstance(window, Window) else int(window)


def star_rows(ctx: ModuleCtx, keys: Sequence, psi: WhittakerHom):
    """Sparse rows of the stacked star-action matrices on the window basis.

    Row label (E, output key); column = index of the input key.
    """
    index = {k: n for n, k in enumerate(keys)}
    rows: Dict[Tuple, Dict[int, Fraction]] = {}
    for g in GENERATING:
        shift = psi.raw_value(g)
        for col, key in enumerate(keys):
            image = ctx.act_raw(g, key)
            if shift:
                image = dict(image)
                _add(image, key, -shift)
            for out, c in image.items():
                if out not in index:
                    raise WindowEscape(f"star action of {GeneratorId.from_raw(g)} left the window at {out}")
                rows.setdefault((g, out), {})[col] = c
    return rows


def _solve_raw(ctx: ModuleCtx, bound: int, psi: WhittakerHom):
    keys = enumerate_window_raw(ctx, bound)
    ech = Echelon()
    # short rows first keeps fill-in low; sort is stable so the order is reproducible
    for row in sorted(star_rows(ctx, keys, psi).values(), key=len):
        ech.add(row)
    kernel = kernel_from_echelon(ech, len(keys))
    # canonical basis: pivots on the highest labels first
    order = list(range(len(keys) - 1, -1, -1))
    return keys, rref(kernel, order)


def _to_vector(keys, vec: Dict[int, Fraction]) -> ModuleVector:
    return ModuleVector.from_raw({keys[c]: x for c, x in vec.items()})


def whittaker_solve(ctx: ModuleCtx, window, psi: Optional[WhittakerHom] = None,
                    verify: bool = True) -> SolveReport:
    """All Whittaker vectors of type psi (default: ctx.phi) inside V_B."""
    bound = _bound(window)
    psi = ctx.phi if psi is None else psi
    keys, basis = _solve_raw(ctx, bound, psi)
    vectors = tuple(_to_vector(keys, v) for v in basis)
    ok = all(verify_vector(ctx, v, psi) for v in vectors) if verify else False
    return SolveReport(ctx.describe(), bound, psi, vectors, ok, len(keys))


def verify_vector(ctx: ModuleCtx, v: ModuleVector, psi: Optional[WhittakerHom] = None) -> bool:
    """(E - psi(E)) v == 0 for the five generators, by plain rewriting."""
    psi = ctx.phi if psi is None else psi
    if not v:
        return True
    for g in GENERATING:
        gen = GeneratorId.from_raw(g)
        image = straighten_on(ctx, [gen], v) - ModuleVector.from_raw(
            ctx.reduce_raw(v.to_raw())) * psi.raw_value(g)
        if image:
            return False
    return True


@dataclass(frozen=True)
class ProbeResult:
    verdict: str  # "reducible-witness" | "no-witness-at-bound"
    bound: int
    witness: Optional[ModuleVector]
    solution_dimension: int
    nontrivial_dimension: int
    witness_verified: bool
    context: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> Dict[str, object]:
        return {
            "context": self.context,
            "bound": self.bound,
            "verdict": self.verdict,
            "witness": str(self.witness) if self.witness is not None else None,
            "witness_verified": self.witness_verified,
            "solution_dimension": self.solution_dimension,
            "nontrivial_dimension": self.nontrivial_dimension,
        }


def _is_trivial_key(key) -> bool:
    return all(r == CENTRAL for r, _ in key)


def reducibility_probe(ctx: ModuleCtx, window) -> ProbeResult:
    """Look for a Whittaker vector of type phi not in Q[C] w.

    A hit generates a proper submodule, so the module is reducible.  A miss
    only says no such vector exists with functional <= B.
    """
    bound = _bound(window)
    keys, basis = _solve_raw(ctx, bound, ctx.phi)
    nontrivial = [n for n, k in enumerate(keys) if not _is_trivial_key(k)]
    trivial = [n for n, k in enumerate(keys) if _is_trivial_key(k)]
    order = nontrivial + trivial
    rank_of = {c: n for n, c in enumerate(order)}
    ntriv = set(nontrivial)
    reduced = rref(basis, order)
    witnesses = [r for r in reduced if min(r, key=rank_of.__getitem__) in ntriv]
    if not witnesses:
        return ProbeResult("no-witness-at-bound", bound, None, len(basis), 0, False, ctx.describe())
    # drop the trivial part: still a Whittaker vector since Q[C] w is
    best = {c: x for c, x in witnesses[0].items() if c in ntriv}
    v = _to_vector(keys, best)
    return ProbeResult("reducible-witness", bound, v, len(basis), len(witnesses),
                       verify_vector(ctx, v), ctx.describe())


def type_scan(ctx: ModuleCtx, window, candidates: Optional[Sequence[WhittakerHom]] = None):
    """Solve for each candidate type; every psi != phi must give dimension 0."""
    if candidates is None:
        candidates = ctx.phi.perturbations(1)
    rows = []
    for psi in candidates:
        rep = whittaker_solve(ctx, window, psi)
        ok = rep.dimension == 0 if psi != ctx.phi else rep.dimension > 0
        rows.append({"psi": psi.to_dict(), "dimension": rep.dimension, "ok": ok})
    return {"context": ctx.describe(), "bound": _bound(window), "scan": rows,
            "passed": all(r["ok"] for r in rows)}


# --- closed-form commutators --------------------------------------------------

def _ad_power_words(e: GeneratorId, x: GeneratorId, a: int, kind: AlgebraKind):
    """[E, X^a] = sum_s X^s [E, X] X^(a-s-1) as words."""
    words: Dict[Tuple[GeneratorId, ...], Fraction] = {}
    br = bracket_gen(kind, e, x)
    for s in range(a):
        for g, c in br.items():
            w = (x,) * s + (g,) + (x,) * (a - s - 1)
            words[w] = words.get(w, 0) + c
    return words


def closed_form_words(k: int, a: int, family: str, target: str):
    """Right-hand side of the closed form for [F_{k+1}, X_{-k}^a], X in {L, H}."""
    fam = {"I": I, "J": J}[family]
    tgt = {"L": L, "H": H}[target]
    words: Dict[Tuple[GeneratorId, ...], Fraction] = {}
    for s in range(1, a + 1):
        if target == "L":
            c = 1
            for t in range(s):
                c *= t * k - 2 * k - 1
        elif family == "I":
            c = (-1) ** s
        else:
            c = 1
        w = (tgt(-k),) * (a - s) + (fam(1 + k - s * k),)
        words[w] = words.get(w, 0) + Fraction(comb(a, s) * c)
    return words


def _probe_vectors(k: int) -> List[Tuple[GeneratorId, ...]]:
    return [(), (H(-(k + 1)),), (L(-(k + 1)),)]


DEFAULT_PHI = WhittakerHom.of(1, -1, 2, 3, 5)


def closed_form_check(k: int, a: int, family: str, target: str,
                      phi: WhittakerHom = DEFAULT_PHI) -> bool:
    """Compare the closed form with iterated brackets, in U and on probe vectors."""
    if a < 0 or k < 0:
        raise ValueError("k and a must be nonnegative")
    if a == 0:
        return True
    fam = {"I": I, "J": J}[family]
    tgt = {"L": L, "H": H}[target]
    kind = AlgebraKind.CENTRAL
    lhs = _ad_power_words(fam(k + 1), tgt(-k), a, kind)
    rhs = closed_form_words(k, a, family, target)
    if normal_form_u(kind, lhs) != normal_form_u(kind, rhs):
        return False
    from .modules import ModuleKind, make_module

    ctx = make_module(ModuleKind.UNIVERSAL_CENTRAL, phi)
    for probe in _probe_vectors(k):
        left = _apply_words(ctx, lhs, probe)
        right = _apply_words(ctx, rhs, probe)
        if left != right:
            return False
    return True


def _apply_words(ctx: ModuleCtx, words, probe) -> ModuleVector:
    total = ModuleVector()
    for w, c in words.items():
        total = total + act_word(ctx, list(w) + list(probe)) * c
    return total


def second_closed_form_words(k: int, a: int, family: str, source: str):
    """[E_{k+1}, F_{-k}^a] = coeff * a * F_{-k}^(a-1) F_1 for E in {L, H}, F in {I, J}."""
    fam = {"I": I, "J": J}[family]
    if source == "L":
        c = -(2 * k + 1)
    else:
        c = 1 if family == "I" else -1
    if a == 0:
        return {}
    return {(fam(-k),) * (a - 1) + (fam(1),): Fraction(a * c)}


def second_closed_form_check(k: int, a: int, family: str, source: str) -> bool:
    src = {"L": L, "H": H}[source]
    fam = {"I": I, "J": J}[family]
    kind = AlgebraKind.CENTRAL
    lhs = _ad_power_words(src(k + 1), fam(-k), a, kind)
    rhs = second_closed_form_words(k, a, family, source)
    return normal_form_u(kind, lhs) == normal_form_u(kind, rhs)


def window_functional_ok(ctx: ModuleCtx, bound: int) -> bool:
    """Every generating star action keeps every window label inside V_B."""
    for key in enumerate_window_raw(ctx, bound):
        for g in GENERATING:
            for out in ctx.act_raw(g, key):
                if key_functional(out) > bound:
                    return False
    return True


def solution_embeds(small: SolveReport, large: SolveReport) -> bool:
    """Each vector of ``small`` lies in the span of ``large``'s basis."""
    if not small.basis:
        return True
    cols: Dict = {}
    ech = Echelon()

    def col_of(key):
        return cols.setdefault(key, len(cols))

    for v in large.basis:
        ech.add({col_of(k): c for k, c in v.to_raw().items()})
    rank = ech.rank
    for v in small.basis:
        trial = Echelon()
        trial.pivots = dict(ech.pivots)
        if trial.add({col_of(k): c for k, c in v.to_raw().items()}):
            return False
    return rank == len(large.basis)


__all__ = [
    "SolveReport",
    "ProbeResult",
    "WindowEscape",
    "whittaker_solve",
    "verify_vector",
    "reducibility_probe",
    "type_scan",
    "closed_form_check",
    "closed_form_words",
    "second_closed_form_check",
    "window_functional_ok",
    "solution_embeds",
    "W",
]
