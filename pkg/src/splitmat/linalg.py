"""Exact rational linear algebra on top of sympy's DomainMatrix over QQ."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Number = int | Fraction
Row = Sequence[Number]


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value))


def _domain_matrix(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    entries = []
    for row in rows:
        converted = []
        for value in row:
            value = to_fraction(value)
            converted.append(QQ(value.numerator, value.denominator))
        entries.append(converted)
    return DomainMatrix(entries, (len(entries), ncols), QQ)


def rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    return _domain_matrix(rows, ncols).rank()


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    if not rows:
        return [
            [Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)
        ]
    matrix = _domain_matrix(rows, ncols)
    if matrix.rank() == ncols:
        return []
    basis = matrix.nullspace().to_Matrix().tolist()
    return [[Fraction(int(x.p), int(x.q)) for x in vector] for vector in basis]
