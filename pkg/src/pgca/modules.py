"""Whittaker module families, truncation windows and quotient reduction.

Module kinds:

``universal-centerless``  M(phi) over the centerless algebra (also L_phi)
``universal-central``     M~(phi), coefficients in Q[C1, C2, C3]
``generic``               L~_{phi,xi}: C_s acts as xi_s
``omega``                 L_phi / Omega_phi (I and J act trivially)
``omega-tilde``           L~_{phi,xi} / Omega~_{phi,xi,c} (also H_0 = c)
``gamma``                 L_phi / Gamma_phi (I trivial); optional xi gives the central version
``upsilon``               L_phi / Upsilon_phi (J trivial); optional xi likewise

All four submodules are spanned by PBW basis vectors (plus ``(H_0 - c)``
multiples for omega-tilde), so each quotient keeps a monomial basis and
reduction is a filter followed by the H_0 substitution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import CENTRAL, RH, RI, RJ, RL, WhittakerHom
from .coeff import RationalLike, format_rational, to_rational
from .errors import ClosureError, ParamError
from .pbw import (
    Key,
    PBWMonomial,
    RawVec,
    Straightener,
    _add,
    monomial_sort_key,
    split_key,
)


class ModuleKind(enum.Enum):
    UNIVERSAL_CENTERLESS = "universal-centerless"
    UNIVERSAL_CENTRAL = "universal-central"
    GENERIC = "generic"
    OMEGA = "omega"
    OMEGA_TILDE = "omega-tilde"
    GAMMA = "gamma"
    UPSILON = "upsilon"

    @property
    def is_quotient(self) -> bool:
        return self in _QUOTIENTS


_QUOTIENTS = {ModuleKind.OMEGA, ModuleKind.OMEGA_TILDE, ModuleKind.GAMMA, ModuleKind.UPSILON}


@dataclass(frozen=True)
class Window:
    """Span of basis labels whose truncation functional is at most ``bound``."""

    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("window bound must be nonnegative")


@dataclass(frozen=True)
class ModuleCtx:
    kind: ModuleKind
    phi: WhittakerHom
    xi: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    c: Optional[Fraction] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    # -- derived structure ---------------------------------------------------
    @property
    def central(self) -> bool:
        """Whether brackets carry central terms."""
        return self.central_mode != "none"

    @property
    def central_mode(self) -> str:
        if self.kind is ModuleKind.UNIVERSAL_CENTRAL:
            return "formal"
        if self.xi is not None:
            return "scalar"
        return "none"

    @property
    def drops_i(self) -> bool:
        return self.kind in (ModuleKind.OMEGA, ModuleKind.OMEGA_TILDE, ModuleKind.GAMMA)

    @property
    def drops_j(self) -> bool:
        return self.kind in (ModuleKind.OMEGA, ModuleKind.OMEGA_TILDE, ModuleKind.UPSILON)

    def parent(self) -> "ModuleCtx":
        """The module the quotient is taken from (self for non-quotients)."""
        if not self.kind.is_quotient:
            return self
        kind = ModuleKind.GENERIC if self.xi is not None else ModuleKind.UNIVERSAL_CENTERLESS
        return ModuleCtx(kind, self.phi, self.xi)

    @property
    def engine(self) -> Straightener:
        eng = self._cache.get("engine")
        if eng is None:
            eng = Straightener(self.central, self.central_mode, self.phi, self.xi)
            self._cache["engine"] = eng
        return eng

    def act_raw(self, g, key: Key) -> RawVec:
        """Action of a raw generator on a (reduced) key, reduced by the quotient."""
        if not self.kind.is_quotient:
            return self.engine.act(g, key)
        memo = self._cache.setdefault("quotient", {})
        hit = memo.get((g, key))
        if hit is None:
            hit = self.reduce_raw(self.engine.act(g, key))
            memo[(g, key)] = hit
        return hit

    def reduce_raw(self, vec: RawVec) -> RawVec:
        if not self.kind.is_quotient:
            return vec
        di, dj = self.drops_i, self.drops_j
        h0 = self.c if self.kind is ModuleKind.OMEGA_TILDE else None
        out: RawVec = {}
        for key, coeff in vec.items():
            if di and any(r == RI for r, _ in key):
                continue
            if dj and any(r == RJ for r, _ in key):
                continue
            if h0 is not None:
                n0 = key.count((RH, 0))
                if n0:
                    coeff = coeff * h0**n0
                    if not coeff:
                        continue
                    key = tuple(f for f in key if f != (RH, 0))
            _add(out, key, coeff)
        return out

    def describe(self) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind.value, "phi": self.phi.to_dict()}
        if self.xi is not None:
            out["xi"] = [format_rational(x) for x in self.xi]
        if self.c is not None:
            out["c"] = format_rational(self.c)
        return out

    def __str__(self):
        return f"ModuleCtx({self.describe()})"


def make_module(kind, phi: WhittakerHom, xi=None, c: RationalLike | None = None) -> ModuleCtx:
    """Validated module context.

    Raises ParamError when xi / c are missing or not meaningful for the kind,
    ClosureError when phi makes the quotient's submodule improper.
    """
    kind = ModuleKind(kind) if not isinstance(kind, ModuleKind) else kind
    if xi is not None:
        xi = tuple(to_rational(x) for x in xi)
        if len(xi) != 3:
            raise ParamError("xi needs three components")
    if c is not None:
        c = to_rational(c)

    needs_xi = kind in (ModuleKind.GENERIC, ModuleKind.OMEGA_TILDE)
    allows_xi = needs_xi or kind in (ModuleKind.GAMMA, ModuleKind.UPSILON)
    if needs_xi and xi is None:
        raise ParamError(f"{kind.value} requires xi")
    if not allows_xi and xi is not None:
        raise ParamError(f"{kind.value} takes no xi")
    if kind is ModuleKind.OMEGA_TILDE and c is None:
        raise ParamError("omega-tilde requires c")
    if kind is not ModuleKind.OMEGA_TILDE and c is not None:
        raise ParamError(f"{kind.value} takes no c")

    if kind in (ModuleKind.OMEGA, ModuleKind.OMEGA_TILDE) and (phi.I1 or phi.J1):
        raise ClosureError(f"{kind.value} needs phi(I1) = phi(J1) = 0, got {phi}")
    if kind is ModuleKind.GAMMA and phi.I1:
        raise ClosureError(f"gamma needs phi(I1) = 0, got {phi}")
    if kind is ModuleKind.UPSILON and phi.J1:
        raise ClosureError(f"upsilon needs phi(J1) = 0, got {phi}")
    return ModuleCtx(kind, phi, xi, c)


# --- windows -------------------------------------------------------------------

def _factor_types(ctx: ModuleCtx, bound: int) -> List[Tuple[Tuple[int, int], int]]:
    types = []
    if ctx.central_mode == "formal":
        types += [((CENTRAL, s), 1) for s in (1, 2, 3)]
    for rank in (RJ, RI, RH, RL):
        if (rank == RI and ctx.drops_i) or (rank == RJ and ctx.drops_j):
            continue
        for part in range(0, bound + 1):
            if ctx.kind is ModuleKind.OMEGA_TILDE and rank == RH and part == 0:
                continue
            types.append(((rank, -part), max(part, 1)))
    return types


def enumerate_window_raw(ctx: ModuleCtx, window: Window | int) -> List[Key]:
    """All basis keys with functional <= bound, in canonical order."""
    bound = window.bound if isinstance(window, Window) else int(window)
    memo = ctx._cache.setdefault("windows", {})
    if bound in memo:
        return memo[bound]
    types = _factor_types(ctx, bound)
    keys: List[Key] = []

    def grow(start: int, budget: int, acc: List) -> None:
        keys.append(tuple(sorted(acc)))
        for t in range(start, len(types)):
            f, cost = types[t]
            if cost <= budget:
                acc.append(f)
                grow(t, budget - cost, acc)
                acc.pop()

    grow(0, bound, [])
    keys.sort(key=monomial_sort_key)
    memo[bound] = keys
    return keys


def enumerate_window(ctx: ModuleCtx, window: Window | int) -> List[Tuple[PBWMonomial, Tuple[int, int, int]]]:
    """Basis labels (monomial, central exponent) of the window."""
    return [split_key(k) for k in enumerate_window_raw(ctx, window)]


# --- quotients -------------------------------------------------------------------

def quotient_reduce(ctx: ModuleCtx, v):
    from .pbw import ModuleVector

    return ModuleVector.from_raw(ctx.reduce_raw(v.to_raw()))


def submodule_membership(kind, m: PBWMonomial, reading: str = "delta") -> bool:
    """Whether ``m w`` lies in the submodule spanned for a quotient kind.

    ``reading="delta"`` counts factors (at least one I / J factor, zero modes
    included); ``reading="weight"`` uses the weight condition |i| + |j| > 0,
    which leaves out ``I_0 w`` and is kept only to exhibit that difference.
    For omega-tilde this covers the I/J part; the ``(H_0 - c)`` part is not
    spanned by monomials.
    """
    kind = ModuleKind(kind) if not isinstance(kind, ModuleKind) else kind
    if not kind.is_quotient:
        raise ValueError(f"{kind.value} is not a quotient kind")
    if reading == "delta":
        size_i, size_j = m.i.length, m.j.length
    elif reading == "weight":
        size_i, size_j = m.i.weight, m.j.weight
    else:
        raise ValueError("reading is 'delta' or 'weight'")
    if kind in (ModuleKind.OMEGA, ModuleKind.OMEGA_TILDE):
        return size_i + size_j > 0
    if kind is ModuleKind.GAMMA:
        return size_i > 0
    return size_j > 0


def submodule_spanning_vectors(ctx: ModuleCtx, window: Window | int):
    """Spanning vectors of the submodule inside the parent's window."""
    from .pbw import ModuleVector

    parent = ctx.parent()
    out = []
    for key in enumerate_window_raw(parent, window):
        m, _ = split_key(key)
        if submodule_membership(ctx.kind, m):
            out.append(ModuleVector.from_raw({key: Fraction(1)}))
        elif ctx.kind is ModuleKind.OMEGA_TILDE and m.h.mult(0) == 0 and not m.i.parts and not m.j.parts:
            # (H_0 - c) H^h L^l w
            with_h0 = tuple(sorted(key + ((RH, 0),)))
            out.append(ModuleVector.from_raw({with_h0: Fraction(1), key: -ctx.c}))
    return out
