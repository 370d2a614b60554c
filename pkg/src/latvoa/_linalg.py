"""Exact rational linear algebra, delegated to sympy's dense domain matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _dm(rows: Sequence[Sequence]) -> DomainMatrix:
    data = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def det(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _to_fraction(_dm(rows).det())


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    inv = _dm(rows).inv().to_Matrix()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return _dm(rows).rank()


def row_basis(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Nonzero rows of the reduced row echelon form of ``rows``."""
    if not rows or not rows[0]:
        return []
    rref, pivots = _dm(rows).rref()
    mat = rref.to_Matrix()
    return [[Fraction(int(x.p), int(x.q)) for x in mat.row(i)] for i in range(len(pivots))]
