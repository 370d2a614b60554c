"""Even positive-definite lattices, bimultiplicative sign cocycles,
submonoids with membership tests, and lattice isometries."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union as _U

from . import _linalg
from .errors import VOAError

Vector = tuple  # coordinates in the lattice basis


class Decision(enum.Enum):
    UNDECIDED = "UNDECIDED"

    def __repr__(self) -> str:
        return self.value


UNDECIDED = Decision.UNDECIDED
Membership = _U[bool, Decision]


def _as_int_matrix(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _exact(x):
    """Return ``x`` as an int when integral, otherwise as a Fraction."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Lattice:
    """Integral lattice given by its Gram matrix in a fixed basis."""

    gram: tuple[tuple[int, ...], ...]
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        gram = _as_int_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        d = len(gram)
        if d == 0 or any(len(row) != d for row in gram):
            raise VOAError("DIMENSION_MISMATCH", "gram must be a nonempty square matrix")
        names = tuple(self.basis_names) or tuple(f"h{i}" for i in range(d))
        if len(names) != d:
            raise VOAError("DIMENSION_MISMATCH", "one basis name per basis vector")
        object.__setattr__(self, "basis_names", names)
        for i in range(d):
            for j in range(d):
                if gram[i][j] != gram[j][i]:
                    raise VOAError("INVALID_LATTICE", "gram matrix is not symmetric")
            if gram[i][i] <= 0 or gram[i][i] % 2:
                raise VOAError("INVALID_LATTICE", "diagonal entries must be even and positive")
        for k in range(1, d + 1):
            if _linalg.det([row[:k] for row in gram[:k]]) <= 0:
                raise VOAError("INVALID_LATTICE", "gram matrix is not positive definite")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _check(self, v: Sequence) -> None:
        if len(v) != self.rank:
            raise VOAError("DIMENSION_MISMATCH", f"expected length {self.rank}, got {len(v)}")

    def raw_pairing(self, u: Sequence, v: Sequence):
        g = self.gram
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = g[i]
                for j, vj in enumerate(v):
                    if vj:
                        total += ui * row[j] * vj
        return total

    def pairing(self, u: Sequence, v: Sequence) -> Fraction:
        """(u|v) = uᵀ·gram·v for rational coordinate vectors."""
        self._check(u)
        self._check(v)
        return Fraction(self.raw_pairing(u, v))

    def norm(self, v: Sequence) -> Fraction:
        return self.pairing(v, v)

    def dual_basis(self) -> list[tuple]:
        """Coordinates of the Gram-dual basis uⁱ with (uⁱ|u_j) = δᵢⱼ."""
        inv = _linalg.inverse(self.gram)
        return [tuple(_exact(x) for x in row) for row in inv]

    def vector(self, *coords) -> Vector:
        v = tuple(_exact(c) for c in coords)
        self._check(v)
        return v

    def zero(self) -> Vector:
        return (0,) * self.rank


def rank_one(N: int, name: str = "a") -> Lattice:
    """The lattice ℤα with (α|α) = 2N."""
    if N < 1:
        raise VOAError("INVALID_LATTICE", "N must be positive")
    return Lattice(((2 * N,),), (name,))


def a2(names: tuple[str, str] = ("a", "b")) -> Lattice:
    """The A₂ root lattice with simple roots α, β."""
    return Lattice(((2, -1), (-1, 2)), names)


@dataclass(frozen=True)
class Cocycle:
    """Signs ε(αᵢ, αⱼ) on basis pairs, extended bimultiplicatively."""

    signs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        signs = _as_int_matrix(self.signs)
        if any(s not in (1, -1) for row in signs for s in row):
            raise VOAError("INVALID_COCYCLE", "signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)
        # positions holding -1; the sign is (-1)^(sum of γᵢθⱼ over them)
        object.__setattr__(
            self,
            "_neg",
            tuple((i, j) for i, row in enumerate(signs) for j, s in enumerate(row) if s == -1),
        )

    def eval(self, gamma: Sequence[int], theta: Sequence[int]) -> int:
        parity = 0
        for i, j in self._neg:
            parity += gamma[i] * theta[j]
        if parity != int(parity):
            raise VOAError("COCYCLE_UNDEFINED", "cocycle needs integral coordinates")
        return -1 if int(parity) % 2 else 1


def cocycle_eval(c: Cocycle, gamma: Sequence[int], theta: Sequence[int]) -> int:
    return c.eval(gamma, theta)


def cocycle_validate(c: Cocycle, lat: Lattice) -> bool:
    """True iff ε(αᵢ,αⱼ)ε(αⱼ,αᵢ) = (-1)^(αᵢ|αⱼ) on every basis pair."""
    d = lat.rank
    if len(c.signs) != d or any(len(row) != d for row in c.signs):
        raise VOAError("DIMENSION_MISMATCH", "cocycle and lattice ranks differ")
    for i in range(d):
        for j in range(d):
            want = -1 if lat.gram[i][j] % 2 else 1
            if c.signs[i][j] * c.signs[j][i] != want:
                return False
    return True


def trivial_cocycle(rank: int = 1) -> Cocycle:
    return Cocycle(tuple(tuple(1 for _ in range(rank)) for _ in range(rank)))


def a2_cocycle() -> Cocycle:
    """ε(α,α) = ε(β,β) = ε(α,β) = 1 and ε(β,α) = -1."""
    return Cocycle(((1, 1), (-1, 1)))


# ---------------------------------------------------------------- submonoids


def _int_vec(v: Iterable) -> Vector:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class Split:
    """ℤ-span of ``free`` plus ℤ≥0-span of ``nonneg`` plus ℤ>0-span of ``positive``.

    The ``positive`` part is optional; with it a single cell can describe
    sets such as ℤα ⊕ ℤ>0 β that are not themselves monoids with zero but
    appear as pieces of a :class:`Union`.
    """

    free: tuple = ()
    nonneg: tuple = ()
    positive: tuple = ()
    _solver: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        free = tuple(_int_vec(v) for v in self.free)
        nonneg = tuple(_int_vec(v) for v in self.nonneg)
        positive = tuple(_int_vec(v) for v in self.positive)
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "nonneg", nonneg)
        object.__setattr__(self, "positive", positive)
        cols = free + nonneg + positive
        if cols:
            if _linalg.rank(cols) != len(cols):
                raise VOAError("INVALID_MONOID", "split bases must be linearly independent")
            # left inverse (BᵀB)⁻¹Bᵀ of the column matrix B
            gram = [[sum(a * b for a, b in zip(u, v)) for v in cols] for u in cols]
            ginv = _linalg.inverse(gram)
            left = [
                tuple(sum(ginv[i][k] * cols[k][c] for k in range(len(cols))) for c in range(len(cols[0])))
                for i in range(len(cols))
            ]
            object.__setattr__(self, "_solver", tuple(left))

    def coordinates(self, v: Sequence[int]) -> tuple | None:
        """Integer coordinates of ``v`` in the combined basis, or None."""
        cols = self.free + self.nonneg + self.positive
        if not cols:
            return () if not any(v) else None
        coeffs = tuple(sum(row[c] * v[c] for c in range(len(v))) for row in self._solver)
        if any(Fraction(x).denominator != 1 for x in coeffs):
            return None
        coeffs = tuple(int(x) for x in coeffs)
        recon = [sum(coeffs[k] * cols[k][c] for k in range(len(cols))) for c in range(len(v))]
        if recon != list(v):
            return None
        return coeffs

    def contains(self, v: Sequence[int]) -> Membership:
        coeffs = self.coordinates(v)
        if coeffs is None:
            return False
        nf, nn = len(self.free), len(self.nonneg)
        if any(c < 0 for c in coeffs[nf:nf + nn]):
            return False
        if any(c <= 0 for c in coeffs[nf + nn:]):
            return False
        return True


@dataclass(frozen=True)
class Generated:
    """Monoid generated by finitely many vectors, tested by bounded search."""

    generators: tuple
    search_bound: int = 20

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(_int_vec(v) for v in self.generators))
        if self.search_bound < 1:
            raise VOAError("INVALID_MONOID", "search_bound must be positive")

    def contains(self, v: Sequence[int]) -> Membership:
        target = _int_vec(v)
        if not any(target):
            return True
        gens = self.generators
        if len(gens) == len(target) and _linalg.det([list(g) for g in gens]) != 0:
            # coordinates in a basis are unique
            inv = _linalg.inverse([list(col) for col in zip(*gens)])
            coords = [sum(Fraction(r) * t for r, t in zip(row, target)) for row in inv]
            return all(c >= 0 and c.denominator == 1 for c in coords)
        # breadth-first over sums of at most search_bound generators
        frontier = {tuple(0 for _ in target)}
        seen = set(frontier)
        for _ in range(self.search_bound):
            nxt = set()
            for u in frontier:
                for g in self.generators:
                    w = tuple(a + b for a, b in zip(u, g))
                    if w == target:
                        return True
                    if w not in seen:
                        seen.add(w)
                        nxt.add(w)
            if not nxt:
                return False
            frontier = nxt
        return UNDECIDED


@dataclass(frozen=True)
class Union:
    """Set-theoretic union of split cells (the caller guarantees closure)."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def contains(self, v: Sequence[int]) -> Membership:
        undecided = False
        for part in self.parts:
            r = part.contains(v)
            if r is True:
                return True
            if r is UNDECIDED:
                undecided = True
        return UNDECIDED if undecided else False


SubMonoid = _U[Split, Generated, Union]


def submonoid_contains(M: SubMonoid, v: Sequence[int]) -> Membership:
    if not any(v):
        return True
    if any(Fraction(x).denominator != 1 for x in v):
        return False
    return M.contains(_int_vec(v))


def _unimodular(vectors: Sequence[Sequence[int]], rank: int) -> bool:
    if len(vectors) != rank:
        return False
    return abs(_linalg.det([list(v) for v in vectors])) == 1


def classify_borel(M: SubMonoid, rank: int | None = None) -> bool:
    """True iff the nonnegative generators of ``M`` form a ℤ-basis."""
    if isinstance(M, Split):
        if M.free or M.positive:
            return False
        vecs = M.nonneg
    elif isinstance(M, Generated):
        vecs = M.generators
    else:
        return False
    if not vecs:
        return False
    rank = len(vecs[0]) if rank is None else rank
    return _unimodular(vecs, rank)


def classify_parabolic(M: SubMonoid, candidate: Sequence[Sequence[int]]) -> Membership:
    """True iff ``candidate`` is a lattice basis lying inside ``M``."""
    if not candidate:
        raise VOAError("DIMENSION_MISMATCH", "candidate basis is empty")
    rank = len(candidate[0])
    if not _unimodular(candidate, rank):
        return False
    undecided = False
    for v in candidate:
        r = submonoid_contains(M, v)
        if r is False:
            return False
        if r is UNDECIDED:
            undecided = True
    return UNDECIDED if undecided else True


# ---------------------------------------------------------------- isometries


@dataclass(frozen=True)
class Isometry:
    """Integer matrix whose j-th column is the image of the j-th basis vector."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_int_matrix(self.matrix))

    def apply(self, v: Sequence) -> Vector:
        return tuple(_exact(sum(row[j] * v[j] for j in range(len(v)))) for row in self.matrix)


def isometry_validate(sigma: Isometry, lat: Lattice) -> bool:
    m, g, d = sigma.matrix, lat.gram, lat.rank
    if len(m) != d or any(len(row) != d for row in m):
        raise VOAError("DIMENSION_MISMATCH", "isometry and lattice ranks differ")
    for i in range(d):
        for j in range(d):
            s = sum(m[k][i] * g[k][l] * m[l][j] for k in range(d) for l in range(d))
            if s != g[i][j]:
                return False
    return abs(_linalg.det(m)) == 1


def simple_reflection(lat: Lattice, i: int) -> Isometry:
    """s_i(v) = v - (v|αᵢ)·2/(αᵢ|αᵢ)·αᵢ, defined when the coefficient is integral."""
    d = lat.rank
    cols = []
    for j in range(d):
        c = Fraction(2 * lat.gram[i][j], lat.gram[i][i])
        if c.denominator != 1:
            raise VOAError("INVALID_ISOMETRY", "reflection is not integral")
        cols.append([(1 if k == j else 0) - (int(c) if k == i else 0) for k in range(d)])
    return Isometry(tuple(tuple(cols[j][k] for j in range(d)) for k in range(d)))


# ---------------------------------------------------------------- standard monoids


def borel_rank_one() -> Split:
    """B = ℤ≥0 α in rank one."""
    return Split(nonneg=((1,),))


def parabolic_a2() -> Split:
    """P = ℤα ⊕ ℤ≥0 β."""
    return Split(free=((1, 0),), nonneg=((0, 1),))


def strictly_positive_a2() -> Split:
    """I = ℤα ⊕ ℤ>0 β, the part of P that acts trivially on the P-modules."""
    return Split(free=((1, 0),), positive=((0, 1),))


def p1_a2() -> Union:
    """P₁ = (ℤα ⊕ ℤ>0 β) ∪ ℤ≥0 α."""
    return Union((strictly_positive_a2(), Split(nonneg=((1, 0),))))
