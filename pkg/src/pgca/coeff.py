"""Exact coefficients: rationals and the central polynomial ring Q[C1, C2, C3].

Rationals are :class:`fractions.Fraction`.  ``CentralPoly`` is a sparse,
immutable polynomial keyed by exponent triples.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

from .errors import ParseError

Exponent = Tuple[int, int, int]
RationalLike = Union[int, Fraction, str]

ZERO_EXP: Exponent = (0, 0, 0)


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise ParseError("not a rational", value, 0)
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class CentralPoly:
    """Polynomial in the central charges C1, C2, C3 with rational coefficients.

    The term table never stores zeros, so equal polynomials have equal tables.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, RationalLike] | None = None):
        table = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(int(a) for a in exp)
                if len(exp) != 3 or min(exp) < 0:
                    raise ValueError(f"bad exponent {exp}")
                q = to_rational(coeff)
                if q:
                    table[exp] = table.get(exp, 0) + q
                    if not table[exp]:
                        del table[exp]
        self._terms = table
        self._hash = None

    @classmethod
    def _raw(cls, table: dict) -> "CentralPoly":
        # trusted constructor: table already canonical
        obj = cls.__new__(cls)
        obj._terms = table
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: RationalLike) -> "CentralPoly":
        q = to_rational(value)
        return cls._raw({ZERO_EXP: q} if q else {})

    @classmethod
    def gen(cls, s: int) -> "CentralPoly":
        """The central charge C_s, s in {1, 2, 3}."""
        if s not in (1, 2, 3):
            raise ValueError("central charges are C1, C2, C3")
        exp = [0, 0, 0]
        exp[s - 1] = 1
        return cls._raw({tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Exponent, coeff: RationalLike = 1) -> "CentralPoly":
        return cls({tuple(exp): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {ZERO_EXP}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(ZERO_EXP, Fraction(0))

    @property
    def total_degree(self) -> float | int:
        """Largest exponent sum; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return float("-inf")
        return max(sum(e) for e in self._terms)

    def __eq__(self, other):
        if isinstance(other, CentralPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({ZERO_EXP: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        table = dict(self._terms)
        for exp, c in other._terms.items():
            s = table.get(exp, 0) + c
            if s:
                table[exp] = s
            else:
                table.pop(exp, None)
        return CentralPoly._raw(table)

    __radd__ = __add__

    def __neg__(self):
        return CentralPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return CentralPoly._raw({})
            return CentralPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, CentralPoly):
            return NotImplemented
        table: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = table.get(e, 0) + c1 * c2
                if s:
                    table[e] = s
                else:
                    table.pop(e, None)
        return CentralPoly._raw(table)

    __rmul__ = __mul__

    def substitute(self, xi: Iterable[RationalLike]) -> Fraction:
        """Evaluate at C_s = xi_s."""
        x1, x2, x3 = (to_rational(v) for v in xi)
        total = Fraction(0)
        for (a1, a2, a3), c in self._terms.items():
            total += c * x1**a1 * x2**a2 * x3**a3
        return total

    def sorted_terms(self):
        """Terms in descending lexicographic order of exponents."""
        return sorted(self._terms.items(), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for s, a in enumerate(exp, start=1):
                if a == 1:
                    factors.append(f"C{s}")
                elif a > 1:
                    factors.append(f"C{s}^{a}")
            parts.append("*".join([format_rational(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"CentralPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "CentralPoly":
        """Inverse of ``str``: ``"3/2*C1^2*C3 + -1*C2"``."""
        text = text.strip()
        if text == "0":
            return cls()
        table: dict = {}
        offset = 0
        for chunk in text.split(" + "):
            m = _POLY_TERM.fullmatch(chunk.strip())
            if not m:
                raise ParseError("bad polynomial term", text, offset)
            coeff = Fraction(m.group(1))
            exp = [0, 0, 0]
            for var in filter(None, (m.group(2) or "").split("*")):
                vm = re.fullmatch(r"C([123])(?:\^(\d+))?", var)
                if not vm:
                    raise ParseError("bad central variable", text, offset)
                exp[int(vm.group(1)) - 1] += int(vm.group(2) or 1)
            key = tuple(exp)
            table[key] = table.get(key, 0) + coeff
            offset += len(chunk) + 3
        return cls(table)


_POLY_TERM = re.compile(r"([+-]?\d+(?:/\d+)?)((?:\*C[123](?:\^\d+)?)*)")


def _coerce(value) -> CentralPoly | None:
    if isinstance(value, CentralPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return CentralPoly.constant(value)
    return None


def poly_add(p: CentralPoly, q: CentralPoly) -> CentralPoly:
    return p + q


def poly_mul(p: CentralPoly, q: CentralPoly) -> CentralPoly:
    return p * q


def poly_substitute(p: CentralPoly, xi) -> Fraction:
    return p.substitute(xi)


C1 = CentralPoly.gen(1)
C2 = CentralPoly.gen(2)
C3 = CentralPoly.gen(3)
