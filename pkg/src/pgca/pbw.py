"""PBW monomials, module vectors and the straightening engines.

A module vector is a combination of basis vectors ``J^j I^i H^h L^l w``
where each of j, i, h, l is a partition with nonnegative parts.  Internally a
basis vector is a *key*: a sorted tuple of raw generators ``(rank, mode)``
with rank order J < I < H < L and, inside a block, modes increasing
(``L[-2] L[-1] L[0]``).  In the universal central module the central charges
are kept as leading factors of rank -1, so the engine only ever deals with
rational scalars.

Two independent straighteners live here:

* :class:`Straightener`: memoized recursive action of one generator on one
  canonical key.  This is the production path used by the solver.
* :func:`straighten` / :func:`normal_form_u`: plain rewriting of arbitrary
  words by adjacent swaps, with a selectable redex strategy.  Slow, but it
  shares nothing with the memoized path except the bracket table, so the
  tests use it as an oracle.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, Iterable, List, Mapping, Sequence, Tuple

from . import algebra
from .algebra import CENTRAL, RH, RI, RJ, RL, GeneratorId, Raw
from .coeff import CentralPoly, format_rational
from .errors import ContextError, DomainError, ParseError, StraighteningError

if TYPE_CHECKING:  # pragma: no cover
    from .modules import ModuleCtx

Key = Tuple[Raw, ...]
RawVec = Dict[Key, Fraction]

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

MAX_DEPTH = 5000


def _add(target: dict, key, value) -> None:
    s = target.get(key, 0) + value
    if s:
        target[key] = s
    else:
        target.pop(key, None)


# --- partitions and monomials -----------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Nonincreasing tuple of nonnegative parts."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if parts and parts[-1] < 0:
            raise ValueError("partition parts must be nonnegative")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_mult(cls, mult: Mapping[int, int]) -> "Partition":
        parts: List[int] = []
        for k, n in mult.items():
            parts.extend([k] * n)
        return cls(tuple(parts))

    def mult(self, k: int) -> int:
        return self.parts.count(k)

    @property
    def multiplicities(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


class PBWMonomial(tuple):
    """Canonical basis word ``J^j I^i H^h L^l`` stored as sorted raw generators.

    Build from partitions with :meth:`from_partitions`; the partitions are
    recovered through the ``j, i, h, l`` properties.
    """

    __slots__ = ()

    def __new__(cls, factors: Iterable[Raw] = ()):
        factors = tuple(sorted(tuple(f) for f in factors))
        for rank, mode in factors:
            if rank not in (RJ, RI, RH, RL) or mode > 0:
                raise ValueError("PBW monomials hold nonpositive-mode L/H/I/J factors only")
        return super().__new__(cls, factors)

    @classmethod
    def _trusted(cls, factors: Key) -> "PBWMonomial":
        return tuple.__new__(cls, factors)

    @classmethod
    def from_partitions(cls, j=(), i=(), h=(), l=()) -> "PBWMonomial":  # noqa: E741
        factors = []
        for rank, part in ((RJ, j), (RI, i), (RH, h), (RL, l)):
            parts = part.parts if isinstance(part, Partition) else tuple(part)
            factors.extend((rank, -p) for p in parts)
        return cls(factors)

    @classmethod
    def from_generators(cls, gens: Iterable[GeneratorId]) -> "PBWMonomial":
        return cls(g.raw() for g in gens)

    def _block(self, rank: int) -> Partition:
        return Partition(tuple(-m for r, m in self if r == rank))

    j = property(lambda self: self._block(RJ))
    i = property(lambda self: self._block(RI))
    h = property(lambda self: self._block(RH))
    l = property(lambda self: self._block(RL))  # noqa: E741

    @property
    def weight(self) -> int:
        return -sum(m for _, m in self)

    @property
    def zero_count(self) -> int:
        return sum(1 for _, m in self if m == 0)

    def generators(self) -> Tuple[GeneratorId, ...]:
        return tuple(GeneratorId.from_raw(f) for f in self)

    def sort_key(self):
        return monomial_sort_key(self)

    def __str__(self):
        if not self:
            return "1"
        out = []
        prev, count = None, 0
        for f in self:
            if f == prev:
                count += 1
                continue
            if prev is not None:
                out.append(f"{GeneratorId.from_raw(prev)}^{count}")
            prev, count = f, 1
        out.append(f"{GeneratorId.from_raw(prev)}^{count}")
        return " ".join(out)

    def __repr__(self):
        return f"PBWMonomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "PBWMonomial":
        text = text.strip()
        if text == "1":
            return cls()
        factors: List[Raw] = []
        pos = 0
        for tok in text.split(" "):
            gen, sep, exp = tok.partition("^")
            if not sep or not exp.isdigit():
                raise ParseError("expected generator^count", text, pos)
            g = algebra.parse_generator(gen)
            if g.is_central or g.mode > 0:
                raise ParseError("monomial factors must be nonpositive L/H/I/J", text, pos)
            factors.extend([g.raw()] * int(exp))
            pos += len(tok) + 1
        return cls(factors)


def monomial_sort_key(key: Iterable[Raw]):
    """Graded key: (weight, zero count, J, I, H, L partitions, central exponents)."""
    blocks: List[List[int]] = [[], [], [], []]
    alpha = [0, 0, 0]
    weight = zeros = 0
    for rank, mode in key:
        if rank == CENTRAL:
            alpha[mode - 1] += 1
            continue
        blocks[rank].append(-mode)
        weight -= mode
        zeros += mode == 0
    return (weight, zeros) + tuple(tuple(b) for b in blocks) + (tuple(alpha),)


def split_key(key: Key) -> Tuple[PBWMonomial, Tuple[int, int, int]]:
    alpha = [0, 0, 0]
    rest = []
    for f in key:
        if f[0] == CENTRAL:
            alpha[f[1] - 1] += 1
        else:
            rest.append(f)
    return PBWMonomial._trusted(tuple(rest)), tuple(alpha)


def join_key(m: PBWMonomial, alpha: Sequence[int]) -> Key:
    prefix: List[Raw] = []
    for s, a in enumerate(alpha, start=1):
        prefix.extend([(CENTRAL, s)] * a)
    return tuple(prefix) + tuple(m)


def trunc_functional(m: PBWMonomial, coeff_deg: int = 0) -> int:
    """Central degree + weight + number of zero-mode factors."""
    return coeff_deg + m.weight + m.zero_count


def key_functional(key: Key) -> int:
    n = 0
    for rank, mode in key:
        n += 1 if (rank == CENTRAL or mode == 0) else -mode
    return n


# --- module vectors ------------------------------------------------------------

class ModuleVector:
    """Finite combination PBWMonomial -> CentralPoly (immutable)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[PBWMonomial, object] | None = None):
        table: Dict[PBWMonomial, CentralPoly] = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, PBWMonomial):
                m = PBWMonomial(m)
            poly = c if isinstance(c, CentralPoly) else CentralPoly.constant(c)
            s = table.get(m, CentralPoly()) + poly
            if s:
                table[m] = s
            else:
                table.pop(m, None)
        self._terms = table

    @classmethod
    def basis(cls, m: PBWMonomial | Iterable[Raw] = ()) -> "ModuleVector":
        m = m if isinstance(m, PBWMonomial) else PBWMonomial(m)
        return cls({m: 1})

    @classmethod
    def from_raw(cls, raw: Mapping[Key, Fraction]) -> "ModuleVector":
        grouped: Dict[PBWMonomial, dict] = {}
        for key, c in raw.items():
            if not c:
                continue
            m, alpha = split_key(key)
            _add(grouped.setdefault(m, {}), alpha, c)
        vec = cls.__new__(cls)
        vec._terms = {m: CentralPoly._raw(t) for m, t in grouped.items() if t}
        return vec

    def to_raw(self) -> RawVec:
        out: RawVec = {}
        for m, poly in self._terms.items():
            for alpha, c in poly.items():
                _add(out, join_key(m, alpha), c)
        return out

    @property
    def terms(self) -> Dict[PBWMonomial, CentralPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, m) -> CentralPoly:
        m = m if isinstance(m, PBWMonomial) else PBWMonomial(m)
        return self._terms.get(m, CentralPoly())

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, ModuleVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        table = dict(self._terms)
        for m, c in other._terms.items():
            s = table.get(m, CentralPoly()) + c
            if s:
                table[m] = s
            else:
                table.pop(m, None)
        vec = ModuleVector.__new__(ModuleVector)
        vec._terms = table
        return vec

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, CentralPoly):
            return ModuleVector({m: c * scalar for m, c in self._terms.items()})
        return ModuleVector({m: c * Fraction(scalar) for m, c in self._terms.items()})

    __rmul__ = __mul__

    @property
    def maxdeg(self):
        """Largest monomial weight; ``-inf`` for zero."""
        if not self._terms:
            return float("-inf")
        return max(m.weight for m in self._terms)

    def max_ls_hs(self, s: int):
        """Diagnostic: max of l(s) + h(s) over the support."""
        if not self._terms:
            return float("-inf")
        return max(m.l.mult(s) + m.h.mult(s) for m in self._terms)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda t: monomial_sort_key(t[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_items():
            text = str(c)
            if len(c.terms) > 1:
                text = f"({text})"
            parts.append(f"{text} * {m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ModuleVector({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ModuleVector":
        text = text.strip()
        if text == "0":
            return cls()
        chunks, depth, start = [], 0, 0
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif depth == 0 and text.startswith(" + ", i):
                chunks.append((start, text[start:i]))
                start = i + 3
                i += 3
                continue
            i += 1
        chunks.append((start, text[start:]))
        table: Dict[PBWMonomial, CentralPoly] = {}
        for pos, chunk in chunks:
            coeff, sep, mono = chunk.partition(" * ")
            if not sep:
                raise ParseError("expected 'coeff * monomial'", text, pos)
            coeff = coeff.strip()
            if coeff.startswith("(") and coeff.endswith(")"):
                coeff = coeff[1:-1]
            poly = CentralPoly.parse(coeff)
            m = PBWMonomial.parse(mono)
            table[m] = table.get(m, CentralPoly()) + poly
        return cls(table)


W = ModuleVector.basis(())  # the cyclic Whittaker vector


def vector_of(*gens: GeneratorId, coeff=1) -> ModuleVector:
    """``coeff * g1 g2 ... w`` for nonpositive generators already in PBW order."""
    return ModuleVector({PBWMonomial.from_generators(gens): coeff})


# --- memoized engine -----------------------------------------------------------

class Straightener:
    """Action of single generators on canonical keys, memoized.

    ``central_mode`` is ``"formal"`` (C_s kept as factors), ``"scalar"``
    (C_s replaced by ``xi[s-1]``) or ``"none"`` (centerless algebra).
    """

    def __init__(self, central: bool, central_mode: str, phi, xi=None):
        self.central = central
        self.central_mode = central_mode
        self.phi = phi
        self.xi = tuple(xi) if xi is not None else None
        self._memo: Dict[Tuple[Raw, Key], RawVec] = {}
        self._depth = 0
        self.calls = 0

    def act(self, g: Raw, key: Key) -> RawVec:
        """g . (key w); the returned dict must not be mutated."""
        memo_key = (g, key)
        hit = self._memo.get(memo_key)
        if hit is not None:
            return hit
        self._depth += 1
        if self._depth > MAX_DEPTH:
            self._depth = 0
            raise StraighteningError(f"depth fuel exhausted acting with {g} on {key}")
        try:
            res = self._act(g, key)
        finally:
            self._depth -= 1
        self.calls += 1
        self._memo[memo_key] = res
        return res

    def _act(self, g: Raw, key: Key) -> RawVec:
        rank, mode = g
        if rank == CENTRAL:
            if self.central_mode == "none":
                raise ContextError(f"central charge {GeneratorId.from_raw(g)} in a centerless module")
            if self.central_mode == "scalar":
                val = self.xi[mode - 1]
                return {key: val} if val else {}
            positive = False
        else:
            positive = mode >= 1
        if positive:
            if not key:
                val = self.phi.raw_value(g)
                return {(): val} if val else {}
        elif not key or g <= key[0]:
            return {(g,) + key: 1}
        # g x1 rest = x1 (g rest) + [g, x1] rest
        x1, rest = key[0], key[1:]
        res: RawVec = {}
        for k2, c2 in self.act(g, rest).items():
            for k3, c3 in self.act(x1, k2).items():
                _add(res, k3, c2 * c3)
        for h, cb in algebra.raw_bracket(self.central, g, x1):
            for k3, c3 in self.act(h, rest).items():
                _add(res, k3, cb * c3)
        return res

    def act_vec(self, g: Raw, vec: Mapping[Key, Fraction]) -> RawVec:
        out: RawVec = {}
        for key, c in vec.items():
            for k2, c2 in self.act(g, key).items():
                _add(out, k2, c * c2)
        return out


# --- public action API -----------------------------------------------------------

def _check_vector(ctx: "ModuleCtx", v: ModuleVector) -> None:
    if ctx.central_mode != "formal" and not v.is_constant():
        raise ContextError(f"{ctx.kind.value} module has scalar coefficients only")


def act_gen(ctx: "ModuleCtx", g: GeneratorId, v: ModuleVector) -> ModuleVector:
    """Module action g . v in canonical PBW form (quotient-reduced by ctx)."""
    _check_vector(ctx, v)
    if g.is_central and ctx.central_mode == "none":
        if v:
            raise ContextError(f"{g} does not act on the centerless module")
        return ModuleVector()
    gr = g.raw()
    out: RawVec = {}
    for key, c in ctx.reduce_raw(v.to_raw()).items():
        for k2, c2 in ctx.act_raw(gr, key).items():
            _add(out, k2, c * c2)
    return ModuleVector.from_raw(out)


def act_word(ctx: "ModuleCtx", word: Sequence[GeneratorId]) -> ModuleVector:
    """word . w, applying the rightmost generator first."""
    raw: RawVec = ctx.reduce_raw({(): Fraction(1)})
    for g in reversed(list(word)):
        if g.is_central and ctx.central_mode == "none":
            raise ContextError(f"{g} does not act on the centerless module")
        gr = g.raw()
        nxt: RawVec = {}
        for key, c in raw.items():
            for k2, c2 in ctx.act_raw(gr, key).items():
                _add(nxt, k2, c * c2)
        raw = nxt
    return ModuleVector.from_raw(raw)


def star_act(ctx: "ModuleCtx", g: GeneratorId, v: ModuleVector, psi=None) -> ModuleVector:
    """g . v - psi(g) v with psi defaulting to the context's phi."""
    if g.is_central or g.mode < 1:
        raise DomainError(f"star action is defined for positive modes only, got {g}")
    psi = ctx.phi if psi is None else psi
    shift = psi.raw_value(g.raw())
    result = act_gen(ctx, g, v)
    if shift:
        result = result - v * shift
    return result


def nilpotency_index(ctx: "ModuleCtx", g: GeneratorId, v: ModuleVector, cap: int = 50):
    """Smallest p <= cap with (g star)^p v == 0, else None (cap exceeded)."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    cur = v
    if not cur:
        return 0
    for p in range(1, cap + 1):
        cur = star_act(ctx, g, cur)
        if not cur:
            return p
    return None


# --- rewriting straightener (oracle path) ------------------------------------------

def _module_order(g: Raw):
    rank, mode = g
    if rank != CENTRAL and mode >= 1:
        return (4,)
    return g


def _u_order(g: Raw):
    rank, mode = g
    if rank != CENTRAL and mode >= 1:
        return (4, rank, mode)
    return g


def _find_redex(word: Key, order, sink: bool, scalar_central: bool, strategy: str):
    n = len(word)
    idx = range(n) if strategy == "left" else range(n - 1, -1, -1)
    for i in idx:
        g = word[i]
        if scalar_central and g[0] == CENTRAL:
            return i, "scalar"
        if i + 1 < n and order(g) > order(word[i + 1]):
            return i, "swap"
        if sink and i == n - 1 and g[0] != CENTRAL and g[1] >= 1:
            return i, "sink"
    return None, None


def rewrite(
    start: Mapping[Key, Fraction],
    *,
    central: bool,
    central_mode: str = "formal",
    phi=None,
    xi=None,
    strategy: str = "left",
    fuel: int = 2_000_000,
) -> RawVec:
    """Normal form of a combination of words by adjacent-swap rewriting.

    With ``phi`` given the words act on the Whittaker vector (positive
    generators are pushed right and evaluated); without it the result is the
    PBW normal form in the enveloping algebra.  ``strategy`` picks the
    leftmost or rightmost redex first.
    """
    if strategy not in ("left", "right"):
        raise ValueError("strategy is 'left' or 'right'")
    sink = phi is not None
    order = _module_order if sink else _u_order
    scalar_central = central_mode == "scalar"
    todo: RawVec = {}
    for w, c in start.items():
        _add(todo, tuple(w), Fraction(c))
    done: RawVec = {}
    while todo:
        word, coeff = todo.popitem()
        if central_mode == "none" and any(f[0] == CENTRAL for f in word):
            raise ContextError("central charge in a centerless computation")
        pos, kind = _find_redex(word, order, sink, scalar_central, strategy)
        if pos is None:
            _add(done, word, coeff)
            continue
        fuel -= 1
        if fuel < 0:
            raise StraighteningError("rewriting fuel exhausted")
        if kind == "scalar":
            val = xi[word[pos][1] - 1]
            if val:
                _add(todo, word[:pos] + word[pos + 1:], coeff * val)
        elif kind == "sink":
            val = phi.raw_value(word[-1])
            if val:
                _add(todo, word[:-1], coeff * val)
        else:
            a, b = word[pos], word[pos + 1]
            head, tail = word[:pos], word[pos + 2:]
            _add(todo, head + (b, a) + tail, coeff)
            for h, cb in algebra.raw_bracket(central, a, b):
                _add(todo, head + (h,) + tail, coeff * cb)
    return done


def straighten(ctx: "ModuleCtx", word: Sequence[GeneratorId], strategy: str = "left") -> ModuleVector:
    """word . w by plain rewriting (independent of the memoized engine)."""
    raw = rewrite(
        {tuple(g.raw() for g in word): Fraction(1)},
        central=ctx.central,
        central_mode=ctx.central_mode,
        phi=ctx.phi,
        xi=ctx.xi,
        strategy=strategy,
    )
    return ModuleVector.from_raw(ctx.reduce_raw(raw))


def straighten_on(ctx: "ModuleCtx", word: Sequence[GeneratorId], v: ModuleVector,
                  strategy: str = "left") -> ModuleVector:
    """word . v by rewriting each basis word of v."""
    prefix = tuple(g.raw() for g in word)
    start: RawVec = {}
    for key, c in v.to_raw().items():
        _add(start, prefix + key, c)
    raw = rewrite(start, central=ctx.central, central_mode=ctx.central_mode,
                  phi=ctx.phi, xi=ctx.xi, strategy=strategy)
    return ModuleVector.from_raw(ctx.reduce_raw(raw))


def normal_form_u(kind: algebra.AlgebraKind, terms: Mapping[Tuple[GeneratorId, ...], object],
                  strategy: str = "left") -> Dict[Tuple[GeneratorId, ...], Fraction]:
    """PBW normal form of an enveloping-algebra element given as words."""
    central = kind is algebra.AlgebraKind.CENTRAL
    start: RawVec = {}
    for word, c in terms.items():
        if not central and any(g.is_central for g in word):
            raise DomainError("central charge in the centerless enveloping algebra")
        _add(start, tuple(g.raw() for g in word), Fraction(c))
    raw = rewrite(start, central=central, strategy=strategy)
    return {tuple(GeneratorId.from_raw(f) for f in w): c for w, c in raw.items()}


def format_u_element(nf: Mapping[Tuple[GeneratorId, ...], Fraction]) -> str:
    if not nf:
        return "0"
    items = sorted(nf.items(), key=lambda t: (len(t[0]), [x.raw() for x in t[0]]))
    return " + ".join(
        f"{format_rational(c)} * " + (" ".join(map(str, w)) if w else "1") for w, c in items
    )
