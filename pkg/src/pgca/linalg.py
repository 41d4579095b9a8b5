"""Exact sparse null spaces over Q.

Rows are dicts ``column -> int``.  Elimination is fraction-free: a row is
reduced by integer combinations and then divided by the gcd of its entries,
so entries stay small and nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence

Row = Dict[int, int]


def _primitive(row: Row) -> Row:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def integer_row(entries: Mapping[int, Fraction]) -> Row:
    """Scale a rational row to a primitive integer row with the same kernel."""
    den = 1
    for v in entries.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return _primitive({c: int(v * den) for c, v in entries.items() if v})


class Echelon:
    """Incremental row echelon form; pivot = smallest column of each row."""

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    def add(self, row: Mapping[int, Fraction] | Row) -> bool:
        """Insert a row; returns True if it increased the rank."""
        if any(isinstance(v, Fraction) for v in row.values()):
            row = integer_row(row)
        else:
            row = _primitive({c: v for c, v in row.items() if v})
        while row:
            col = min(row)
            piv = self.pivots.get(col)
            if piv is None:
                if row[col] < 0:
                    row = {c: -v for c, v in row.items()}
                self.pivots[col] = row
                return True
            a, b = piv[col], row[col]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {c: v * ma for c, v in row.items()}
            for c, v in piv.items():
                s = new.get(c, 0) - v * mb
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            row = _primitive(new)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def null_space(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> List[Dict[int, Fraction]]:
    """Basis of {x : row . x = 0 for all rows}, as sparse Fraction vectors.

    One vector per free column f, with x_f = 1 and the other free columns 0.
    """
    ech = Echelon()
    for r in sorted((r for r in rows if r), key=len):
        ech.add(r)
    return kernel_from_echelon(ech, ncols)


def kernel_from_echelon(ech: Echelon, ncols: int) -> List[Dict[int, Fraction]]:
    pivots = ech.pivots
    order = sorted(pivots, reverse=True)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x: Dict[int, Fraction] = {f: Fraction(1)}
        for p in order:
            if p < f:
                row = pivots[p]
                s = sum((v * x[c] for c, v in row.items() if c != p and c in x), Fraction(0))
                if s:
                    x[p] = -s / row[p]
        basis.append(x)
    return basis


def rref(vectors: Sequence[Mapping[int, Fraction]], order: Sequence[int]) -> List[Dict[int, Fraction]]:
    """Reduced row echelon form of a set of sparse vectors.

    ``order`` lists the columns by pivot priority; every output vector has
    leading entry 1 in its pivot column and zeros in the other pivots.  The
    result depends only on the span.
    """
    rank_of = {c: n for n, c in enumerate(order)}
    rows: List[Dict[int, Fraction]] = []
    for v in vectors:
        r = {c: Fraction(x) for c, x in v.items() if x}
        for piv_col, prow in rows_with_pivots(rows, rank_of):
            if piv_col in r:
                f = r[piv_col]
                for c, x in prow.items():
                    s = r.get(c, 0) - f * x
                    if s:
                        r[c] = s
                    else:
                        r.pop(c, None)
        if r:
            lead = min(r, key=rank_of.__getitem__)
            inv = 1 / r[lead]
            r = {c: x * inv for c, x in r.items()}
            for other in rows:
                if lead in other:
                    f = other[lead]
                    for c, x in r.items():
                        s = other.get(c, 0) - f * x
                        if s:
                            other[c] = s
                        else:
                            other.pop(c, None)
            rows.append(r)
    rows.sort(key=lambda r: rank_of[min(r, key=rank_of.__getitem__)])
    return rows


def rows_with_pivots(rows, rank_of):
    for r in rows:
        yield min(r, key=rank_of.__getitem__), r
