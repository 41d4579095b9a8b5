"""The planar Galilean conformal algebra and its universal central extension.

Generators are ``L[m], H[m], I[m], J[m]`` (m any integer) and, for the
central extension, ``C1, C2, C3``.  Nontrivial brackets (central version)::

    [L_n, L_m] = (m-n) L_{m+n} + n^3 d_{m+n,0} C1
    [L_n, H_m] = m H_{m+n}     + n^2 d_{m+n,0} C2
    [H_n, H_m] =                 n   d_{m+n,0} C3
    [L_n, I_m] = (m-n) I_{m+n}      [L_n, J_m] = (m-n) J_{m+n}
    [H_n, I_m] = I_{m+n}            [H_n, J_m] = -J_{m+n}

The centerless algebra uses the same table with the delta terms dropped.

Internally a generator is a pair ``(rank, mode)``.  Ranks follow the PBW
block order J < I < H < L; central charges have rank -1 and carry their
index 1..3 in the mode slot.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .coeff import RationalLike, format_rational, to_rational
from .errors import DomainError, ParseError

CENTRAL, RJ, RI, RH, RL = -1, 0, 1, 2, 3
FAMILIES = ("L", "H", "I", "J")
RANK = {"J": RJ, "I": RI, "H": RH, "L": RL}
FAMILY_OF_RANK = {RJ: "J", RI: "I", RH: "H", RL: "L"}

Raw = Tuple[int, int]


class AlgebraKind(enum.Enum):
    CENTERLESS = "centerless"
    CENTRAL = "central"


class GeneratorId(NamedTuple):
    """One basis element: ``family`` in L/H/I/J with an integer mode, or C1/C2/C3."""

    family: str
    mode: Optional[int] = None

    @property
    def is_central(self) -> bool:
        return self.family in ("C1", "C2", "C3")

    def raw(self) -> Raw:
        if self.is_central:
            return (CENTRAL, int(self.family[1]))
        return (RANK[self.family], self.mode)

    @classmethod
    def from_raw(cls, r: Raw) -> "GeneratorId":
        rank, mode = r
        if rank == CENTRAL:
            return cls(f"C{mode}")
        return cls(FAMILY_OF_RANK[rank], mode)

    def __str__(self):
        if self.is_central:
            return self.family
        return f"{self.family}[{self.mode}]"

    @classmethod
    def parse(cls, text: str) -> "GeneratorId":
        return parse_generator(text)


_GEN_RE = re.compile(r"([LHIJ])\[([+-]?\d+)\]|(C[123])")


def _error_column(text: str) -> int:
    """Column of the first character that cannot start or continue a generator."""
    if not text or text[0] not in "LHIJC":
        return 0
    if text[0] == "C":
        return 1 if len(text) < 2 or text[1] not in "123" else 2
    if len(text) < 2 or text[1] != "[":
        return 1
    pos = 2
    if pos < len(text) and text[pos] in "+-":
        pos += 1
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start or pos >= len(text) or text[pos] != "]":
        return pos
    return pos + 1


def parse_generator(text: str) -> GeneratorId:
    m = _GEN_RE.fullmatch(text)
    if not m:
        raise ParseError("bad generator", text, _error_column(text))
    if m.group(3):
        return GeneratorId(m.group(3))
    return GeneratorId(m.group(1), int(m.group(2)))


def L(m: int) -> GeneratorId:
    return GeneratorId("L", m)


def H(m: int) -> GeneratorId:
    return GeneratorId("H", m)


def I(m: int) -> GeneratorId:  # noqa: E743
    return GeneratorId("I", m)


def J(m: int) -> GeneratorId:
    return GeneratorId("J", m)


C1g, C2g, C3g = GeneratorId("C1"), GeneratorId("C2"), GeneratorId("C3")

_DISPLAY_ORDER = {"L": 0, "H": 1, "I": 2, "J": 3, "C1": 4, "C2": 5, "C3": 6}


def _display_key(g: GeneratorId):
    return (_DISPLAY_ORDER[g.family], g.mode if g.mode is not None else 0)


# --- structure constants on raw generators ---------------------------------

def _bracket_table(central: bool, a: Raw, b: Raw) -> List[Tuple[Raw, int]]:
    """[a, b] for raw generators; uncached."""
    fa, n = a
    fb, m = b
    if fa == CENTRAL or fb == CENTRAL:
        return []
    if fa < fb:
        # table is written with the higher rank (L > H > I > J) on the left
        return [(g, -c) for g, c in _bracket_table(central, b, a)]
    out: List[Tuple[Raw, int]] = []
    delta = central and m + n == 0
    if fa == RL:
        if fb == RL:
            if m != n:
                out.append(((RL, m + n), m - n))
            if delta and n:
                out.append(((CENTRAL, 1), n**3))
        elif fb == RH:
            if m:
                out.append(((RH, m + n), m))
            if delta and n:
                out.append(((CENTRAL, 2), n**2))
        else:  # I or J
            if m != n:
                out.append(((fb, m + n), m - n))
    elif fa == RH:
        if fb == RH:
            if delta and n:
                out.append(((CENTRAL, 3), n))
        elif fb == RI:
            out.append(((RI, m + n), 1))
        else:
            out.append(((RJ, m + n), -1))
    # I, J: abelian ideal
    return out


_CACHE: Dict[Tuple[bool, Raw, Raw], Tuple[Tuple[Raw, int], ...]] = {}


def raw_bracket(central: bool, a: Raw, b: Raw) -> Tuple[Tuple[Raw, int], ...]:
    key = (central, a, b)
    hit = _CACHE.get(key)
    if hit is None:
        hit = tuple(_bracket_table(central, a, b))
        _CACHE[key] = hit
    return hit


def clear_bracket_cache() -> None:
    _CACHE.clear()


# --- Lie elements ------------------------------------------------------------

class LieElement:
    """Finite rational combination of generators (immutable)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[GeneratorId, RationalLike]] = None):
        table: Dict[GeneratorId, Fraction] = {}
        for g, c in (terms or {}).items():
            q = to_rational(c)
            if q:
                s = table.get(g, 0) + q
                if s:
                    table[g] = s
                else:
                    table.pop(g, None)
        self._terms = table

    @classmethod
    def of(cls, g: GeneratorId, coeff: RationalLike = 1) -> "LieElement":
        return cls({g: coeff})

    @property
    def terms(self) -> Dict[GeneratorId, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        table = dict(self._terms)
        for g, c in other._terms.items():
            table[g] = table.get(g, 0) + c
        return LieElement(table)

    def __neg__(self):
        return LieElement({g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        q = to_rational(scalar)
        return LieElement({g: c * q for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(
            f"{format_rational(c)}*{g}"
            for g, c in sorted(self._terms.items(), key=lambda t: _display_key(t[0]))
        )

    def __repr__(self):
        return f"LieElement({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LieElement":
        text = text.strip()
        if text == "0":
            return cls()
        table: Dict[GeneratorId, Fraction] = {}
        pos = 0
        for chunk in text.split(" + "):
            coeff, sep, gen = chunk.partition("*")
            if not sep:
                raise ParseError("expected coeff*generator", text, pos)
            g = parse_generator(gen)
            table[g] = table.get(g, 0) + to_rational(coeff)
            pos += len(chunk) + 3
        return cls(table)


def _check_kind(kind: AlgebraKind, g: GeneratorId) -> None:
    if kind is AlgebraKind.CENTERLESS and g.is_central:
        raise DomainError(f"{g} is not an element of the centerless algebra")


def bracket_gen(kind: AlgebraKind, a: GeneratorId, b: GeneratorId) -> LieElement:
    _check_kind(kind, a)
    _check_kind(kind, b)
    central = kind is AlgebraKind.CENTRAL
    return LieElement(
        {GeneratorId.from_raw(g): c for g, c in raw_bracket(central, a.raw(), b.raw())}
    )


def bracket_elem(kind: AlgebraKind, x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of :func:`bracket_gen`."""
    central = kind is AlgebraKind.CENTRAL
    table: Dict[GeneratorId, Fraction] = {}
    for a, ca in x.items():
        _check_kind(kind, a)
        for b, cb in y.items():
            _check_kind(kind, b)
            for g, c in raw_bracket(central, a.raw(), b.raw()):
                gid = GeneratorId.from_raw(g)
                table[gid] = table.get(gid, 0) + ca * cb * c
    return LieElement(table)


# --- Whittaker homomorphisms -------------------------------------------------

@dataclass(frozen=True)
class WhittakerHom:
    """A Lie homomorphism from the positive part to Q.

    L1, L2, H1, I1, J1 generate the positive part and every bracket of two
    positive generators has mode >= 2 and never hits L2, so any five values
    define a homomorphism; everything else maps to zero.
    """

    L1: Fraction = Fraction(0)
    L2: Fraction = Fraction(0)
    H1: Fraction = Fraction(0)
    I1: Fraction = Fraction(0)
    J1: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("L1", "L2", "H1", "I1", "J1"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def of(cls, *values: RationalLike) -> "WhittakerHom":
        """Positional order L1, L2, H1, I1, J1."""
        return cls(*values)

    @property
    def nonsingular(self) -> bool:
        return self.I1 * self.J1 != 0

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return (self.L1, self.L2, self.H1, self.I1, self.J1)

    def raw_value(self, r: Raw) -> Fraction:
        rank, mode = r
        if rank == CENTRAL or mode < 1:
            raise DomainError(f"{GeneratorId.from_raw(r)} is not in the positive part")
        if mode == 1:
            return (self.J1, self.I1, self.H1, self.L1)[rank]
        if mode == 2 and rank == RL:
            return self.L2
        return Fraction(0)

    def to_dict(self) -> Dict[str, str]:
        return {k: format_rational(getattr(self, k)) for k in ("L1", "L2", "H1", "I1", "J1")}

    @classmethod
    def from_dict(cls, data: Dict[str, RationalLike]) -> "WhittakerHom":
        unknown = set(data) - {"L1", "L2", "H1", "I1", "J1"}
        if unknown:
            raise ValueError(f"unknown phi keys: {sorted(unknown)}")
        return cls(**{k: to_rational(v) for k, v in data.items()})

    def perturbations(self, step: RationalLike = 1) -> List["WhittakerHom"]:
        """The ten homomorphisms differing from this one by +-step in one slot."""
        q = to_rational(step)
        out = []
        for name in ("L1", "L2", "H1", "I1", "J1"):
            for sign in (1, -1):
                vals = self.to_values()
                vals[name] += sign * q
                out.append(WhittakerHom(**vals))
        return out

    def to_values(self) -> Dict[str, Fraction]:
        return {k: getattr(self, k) for k in ("L1", "L2", "H1", "I1", "J1")}

    def __str__(self):
        return "phi(" + ", ".join(f"{k}={v}" for k, v in self.to_dict().items()) + ")"


def phi_eval(phi: WhittakerHom, g: GeneratorId) -> Fraction:
    if g.is_central:
        raise DomainError(f"{g} is central; phi is defined on the positive part only")
    return phi.raw_value(g.raw())


def all_generators(max_abs_mode: int, central: bool = True) -> Iterable[GeneratorId]:
    for fam in FAMILIES:
        for m in range(-max_abs_mode, max_abs_mode + 1):
            yield GeneratorId(fam, m)
    if central:
        yield from (C1g, C2g, C3g)
