"""Fock space states h₁(-n₁)⋯h_k(-n_k)e^γ over a lattice, with exact
rational coefficients, Heisenberg actions, grading and canonical printing.

A factor is a pair ``(basis_index, mode)`` standing for αᵢ(-mode) with
``mode >= 1``. Factors inside a term are kept sorted by mode descending,
then basis index ascending.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import VOAError
from .lattice import (
    UNDECIDED,
    Cocycle,
    Isometry,
    Lattice,
    SubMonoid,
    _exact,
    isometry_validate,
    submonoid_contains,
    trivial_cocycle,
)

Factor = tuple  # (basis_index, mode)


def _fkey(f: Factor) -> tuple[int, int]:
    return (-f[1], f[0])


def sort_factors(factors: Iterable[Factor]) -> tuple:
    return tuple(sorted(factors, key=_fkey))


class Charge(NamedTuple):
    """Rational lattice coordinates, optionally shifted by the symbol λ."""

    coords: tuple
    lam: bool = False

    def __add__(self, other: "Charge") -> "Charge":  # type: ignore[override]
        if self.lam and other.lam:
            raise VOAError("BAD_CHARGE", "λ can appear at most once in a charge")
        return Charge(tuple(_exact(a + b) for a, b in zip(self.coords, other.coords)), self.lam or other.lam)

    def __neg__(self) -> "Charge":
        if self.lam:
            raise VOAError("BAD_CHARGE", "cannot negate a λ-shifted charge")
        return Charge(tuple(-a for a in self.coords), False)

    @property
    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for a in self.coords)


class FockTerm(NamedTuple):
    factors: tuple
    charge: Charge

    @property
    def level(self) -> int:
        return sum(m for _, m in self.factors)


class FockVector:
    """Finite linear combination of :class:`FockTerm` with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {t: Fraction(c) for t, c in (terms or {}).items() if c}

    @classmethod
    def from_term(cls, term: FockTerm, coeff=1) -> "FockVector":
        return cls({term: coeff})

    def copy(self) -> "FockVector":
        out = FockVector()
        out.terms = dict(self.terms)
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[FockTerm]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, FockVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = out.get(t, 0) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        res = FockVector()
        res.terms = out
        return res

    def __neg__(self) -> "FockVector":
        res = FockVector()
        res.terms = {t: -c for t, c in self.terms.items()}
        return res

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, scalar) -> "FockVector":
        scalar = Fraction(scalar)
        res = FockVector()
        if scalar:
            res.terms = {t: c * scalar for t, c in self.terms.items()}
        return res

    __rmul__ = __mul__

    def coefficient(self, term: FockTerm) -> Fraction:
        return self.terms.get(term, Fraction(0))

    def __repr__(self) -> str:
        return f"FockVector({len(self.terms)} terms)"


def add_into(acc: dict, vec: dict, scale=1) -> None:
    """acc += scale * vec, dropping cancelled entries."""
    for t, c in vec.items():
        s = acc.get(t, 0) + scale * c
        if s:
            acc[t] = s
        else:
            acc.pop(t, None)


@dataclass(frozen=True)
class LambdaSpec:
    """Pairings of the external weight λ: (λ|αᵢ) for each basis vector and (λ|λ)."""

    pairings: tuple
    norm: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "pairings", tuple(Fraction(x) for x in self.pairings))
        object.__setattr__(self, "norm", Fraction(self.norm))


# ------------------------------------------------------------ partitions


@lru_cache(maxsize=None)
def colored_partitions(k: int, rank: int) -> tuple:
    """All canonical factor tuples of total mode ``k`` with ``rank`` colours."""
    out = []

    def rec(remaining: int, max_mode: int, min_idx: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for mode in range(min(max_mode, remaining), 0, -1):
            start = min_idx if mode == max_mode else 0
            for idx in range(start, rank):
                acc.append((idx, mode))
                rec(remaining - mode, mode, idx, acc)
                acc.pop()

    rec(k, k, 0, [])
    return tuple(out)


@lru_cache(maxsize=None)
def colored_partition_count(k: int, rank: int) -> int:
    """Coefficient of qᵏ in ∏ₘ (1 - qᵐ)^(-rank)."""
    series = [1] + [0] * k
    for m in range(1, k + 1):
        for _ in range(rank):
            for n in range(m, k + 1):
                series[n] += series[n - m]
    return series[k]


# ------------------------------------------------------------ the space


class FockSpace:
    """The lattice Fock space V_L (optionally with λ-shifted charges).

    ``shift`` is the rational offset ε used by module sectors; cocycle signs
    on a shifted charge θ are evaluated on θ - ε.
    """

    def __init__(
        self,
        lattice: Lattice,
        cocycle: Cocycle | None = None,
        lam: LambdaSpec | None = None,
        shift: Sequence | None = None,
    ):
        self.lattice = lattice
        self.rank = lattice.rank
        self.cocycle = cocycle or trivial_cocycle(lattice.rank)
        self.lam = lam
        self.shift = tuple(_exact(x) for x in shift) if shift is not None else None
        if lam is not None and len(lam.pairings) != self.rank:
            raise VOAError("DIMENSION_MISMATCH", "λ pairings must have one entry per basis vector")
        self._norm_cache: dict = {}

    # -- constructors --------------------------------------------------

    def charge(self, *coords, lam: bool = False) -> Charge:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self.rank:
            raise VOAError("DIMENSION_MISMATCH", f"charge needs {self.rank} coordinates")
        if lam and self.lam is None:
            raise VOAError("UNKNOWN_NAME", "no λ configured")
        return Charge(tuple(_exact(c) for c in coords), lam)

    def zero_charge(self) -> Charge:
        return Charge((0,) * self.rank, False)

    def vacuum(self) -> FockVector:
        return FockVector.from_term(FockTerm((), self.zero_charge()))

    def exp(self, *coords, lam: bool = False) -> FockVector:
        return FockVector.from_term(FockTerm((), self.charge(*coords, lam=lam)))

    def state(self, factors: Sequence[tuple[int, int]], *coords, lam: bool = False, coeff=1) -> FockVector:
        """Basis-factor state from ``(basis_index, mode)`` pairs, modes positive."""
        for i, m in factors:
            if m < 1:
                raise VOAError("NONNEGATIVE_MODE", f"mode -{m} is not a creation mode")
            if not 0 <= i < self.rank:
                raise VOAError("UNKNOWN_NAME", f"basis index {i}")
        charge = self.charge(*coords, lam=lam) if coords else self.zero_charge()
        return FockVector.from_term(FockTerm(sort_factors(factors), charge), coeff)

    # -- pairings ------------------------------------------------------

    def h_lambda(self, h: Sequence) -> Fraction:
        if self.lam is None:
            return Fraction(0)
        return sum((Fraction(x) * p for x, p in zip(h, self.lam.pairings)), Fraction(0))

    def pair_h(self, h: Sequence, c: Charge):
        """(h|c) for a rational vector h against a charge (λ included)."""
        val = self.lattice.raw_pairing(h, c.coords)
        if c.lam:
            val += self.h_lambda(h)
        return val

    def pair_charges(self, c1: Charge, c2: Charge):
        val = self.lattice.raw_pairing(c1.coords, c2.coords)
        if c1.lam:
            val += self.h_lambda(c2.coords)
        if c2.lam:
            val += self.h_lambda(c1.coords)
        if c1.lam and c2.lam:
            val += self.lam.norm
        return val

    def charge_norm(self, c: Charge):
        v = self._norm_cache.get(c)
        if v is None:
            v = _exact(self.pair_charges(c, c))
            self._norm_cache[c] = v
        return v

    def min_weight(self, c: Charge):
        """Lowest weight ½(c|c) in the sector of charge c."""
        return _exact(Fraction(self.charge_norm(c)) / 2)

    def cocycle_sign(self, gamma: Charge, theta: Charge) -> int:
        coords = theta.coords
        if not theta.is_integral:
            if self.shift is None:
                raise VOAError("COCYCLE_UNDEFINED", "cocycle needs an integral charge")
            coords = tuple(_exact(a - s) for a, s in zip(coords, self.shift))
        if not gamma.is_integral or any(Fraction(a).denominator != 1 for a in coords):
            raise VOAError("COCYCLE_UNDEFINED", "cocycle needs integral charges")
        return self.cocycle.eval(gamma.coords, coords)

    # -- grading -------------------------------------------------------

    def weight(self, t: FockTerm):
        return _exact(t.level + Fraction(self.charge_norm(t.charge)) / 2)

    def weights(self, v: FockVector) -> set:
        return {self.weight(t) for t in v.terms}

    def homogeneous_weight(self, v: FockVector):
        ws = self.weights(v)
        if len(ws) != 1:
            raise VOAError("INHOMOGENEOUS", "vector is not homogeneous in weight")
        return ws.pop()

    def split_by_weight(self, v: FockVector) -> dict:
        parts: dict = {}
        for t, c in v.terms.items():
            parts.setdefault(self.weight(t), {})[t] = c
        return {w: FockVector(d) for w, d in parts.items()}

    def charge_of(self, v: FockVector) -> Charge:
        if not v.terms:
            raise VOAError("ZERO_VECTOR", "the zero vector has no charge")
        charges = {t.charge for t in v.terms}
        if len(charges) != 1:
            raise VOAError("MIXED_CHARGE", "terms carry different charges")
        return charges.pop()

    # -- normal forms ---------------------------------------------------

    def normalize(self, raw: Iterable) -> FockVector:
        """Canonicalize ``(coeff, [(h, mode), ...], charge)`` entries.

        Each ``h`` is a rational coordinate vector and each ``mode`` a
        negative integer; factors are expanded over the lattice basis.
        """
        acc: dict = {}
        for coeff, factors, charge in raw:
            if not isinstance(charge, Charge):
                charge = self.charge(*charge)
            partial = {(): Fraction(coeff)}
            for h, mode in factors:
                if mode >= 0:
                    raise VOAError("NONNEGATIVE_MODE", f"mode {mode} is not a creation mode")
                nxt: dict = {}
                for fs, c in partial.items():
                    for i, hi in enumerate(h):
                        if hi:
                            key = sort_factors(fs + ((i, -mode),))
                            nxt[key] = nxt.get(key, 0) + c * hi
                partial = nxt
            for fs, c in partial.items():
                if c:
                    t = FockTerm(fs, charge)
                    s = acc.get(t, 0) + c
                    if s:
                        acc[t] = s
                    else:
                        acc.pop(t, None)
        out = FockVector()
        out.terms = acc
        return out

    # -- Heisenberg action -------------------------------------------------

    def _basis_products(self, h: Sequence) -> tuple:
        """(h|αᵢ) for each basis vector."""
        return tuple(self.lattice.raw_pairing(h, e) for e in _unit_vectors(self.rank))

    def act_term(self, h: Sequence, m: int, t: FockTerm, coeff, acc: dict) -> None:
        """acc += coeff · h(m)·t."""
        if m < 0:
            for i, hi in enumerate(h):
                if hi:
                    nt = FockTerm(sort_factors(t.factors + ((i, -m),)), t.charge)
                    s = acc.get(nt, 0) + coeff * hi
                    if s:
                        acc[nt] = s
                    else:
                        acc.pop(nt, None)
        elif m == 0:
            val = self.pair_h(h, t.charge)
            if val:
                s = acc.get(t, 0) + coeff * val
                if s:
                    acc[t] = s
                else:
                    acc.pop(t, None)
        else:
            prods = self._basis_products(h)
            fs = t.factors
            done = set()
            for pos, (i, mode) in enumerate(fs):
                if mode != m or prods[i] == 0 or (i, mode) in done:
                    continue
                done.add((i, mode))
                mult = sum(1 for f in fs if f == (i, mode))
                nt = FockTerm(fs[:pos] + fs[pos + 1:], t.charge)
                s = acc.get(nt, 0) + coeff * m * prods[i] * mult
                if s:
                    acc[nt] = s
                else:
                    acc.pop(nt, None)

    def act_dict(self, h: Sequence, m: int, vec: dict) -> dict:
        acc: dict = {}
        for t, c in vec.items():
            self.act_term(h, m, t, c, acc)
        return acc

    def heisenberg_act(self, h: Sequence, m: int, v: FockVector) -> FockVector:
        if len(h) != self.rank:
            raise VOAError("DIMENSION_MISMATCH", "h must have rank coordinates")
        out = FockVector()
        out.terms = self.act_dict(tuple(_exact(x) for x in h), m, v.terms)
        return out

    # -- enumeration -------------------------------------------------------

    def charges_up_to(self, max_weight, member=None) -> list[Charge]:
        """Integral charges γ with ½(γ|γ) ≤ max_weight (λ not included)."""
        max_weight = Fraction(max_weight)
        if max_weight < 0:
            return []
        dual = self.lattice.dual_basis()
        bounds = [math.isqrt(math.floor(2 * max_weight * Fraction(dual[i][i]))) for i in range(self.rank)]
        out = []

        def rec(prefix: list):
            if len(prefix) == self.rank:
                c = Charge(tuple(prefix), False)
                if Fraction(self.charge_norm(c)) / 2 <= max_weight:
                    if member is None or member(c):
                        out.append(c)
                return
            b = bounds[len(prefix)]
            for x in range(-b, b + 1):
                prefix.append(x)
                rec(prefix)
                prefix.pop()

        rec([])
        return sorted(out, key=lambda c: (self.charge_norm(c), c.coords))

    def terms_of_weight(self, charge: Charge, weight) -> list[FockTerm]:
        level = Fraction(weight) - Fraction(self.min_weight(charge))
        if level < 0 or level.denominator != 1:
            return []
        return [FockTerm(fs, charge) for fs in colored_partitions(int(level), self.rank)]

    def basis(self, M: SubMonoid | None, max_weight, min_weight=0) -> list[FockTerm]:
        """Canonical terms with charge in M and min_weight ≤ weight ≤ max_weight."""
        member = None if M is None else (lambda c: _member(M, c))
        out = []
        for c in self.charges_up_to(max_weight, member):
            base = Fraction(self.min_weight(c))
            k = 0
            while base + k <= max_weight:
                if base + k >= min_weight:
                    out.extend(FockTerm(fs, c) for fs in colored_partitions(k, self.rank))
                k += 1
        return sorted(out, key=self.sort_key)

    def graded_dim(self, M: SubMonoid | None, n) -> int:
        n = Fraction(n)
        if n < 0:
            raise VOAError("BAD_WEIGHT", "weight must be nonnegative")
        total = 0
        member = None if M is None else (lambda c: _member(M, c))
        for c in self.charges_up_to(n, member):
            level = n - Fraction(self.min_weight(c))
            if level.denominator == 1:
                total += colored_partition_count(int(level), self.rank)
        return total

    # -- isometries ----------------------------------------------------------

    def apply_isometry(self, sigma: Isometry, v: FockVector) -> FockVector:
        if not isometry_validate(sigma, self.lattice):
            raise VOAError("INVALID_ISOMETRY", "matrix does not preserve the form")
        units = _unit_vectors(self.rank)
        raw = []
        for t, c in v.terms.items():
            if t.charge.lam:
                raise VOAError("BAD_CHARGE", "isometries act on lattice charges only")
            factors = [(sigma.apply(units[i]), -m) for i, m in t.factors]
            raw.append((c, factors, Charge(sigma.apply(t.charge.coords), False)))
        return self.normalize(raw)

    # -- printing ------------------------------------------------------------

    def sort_key(self, t: FockTerm):
        return (self.weight(t), t.charge.coords, t.charge.lam, t.factors)

    def format_charge(self, c: Charge) -> str:
        if not c.lam and not any(c.coords):
            return "vac"
        inner = ",".join(str(Fraction(x)) for x in c.coords)
        return f"E[{inner}{';L' if c.lam else ''}]"

    def format_term(self, t: FockTerm) -> str:
        names = self.lattice.basis_names
        gens = "".join(f"{names[i]}(-{m})" for i, m in t.factors)
        return gens + self.format_charge(t.charge)

    def format(self, v: FockVector) -> str:
        if not v.terms:
            return "0"
        pieces = []
        for k, t in enumerate(sorted(v.terms, key=self.sort_key)):
            c = v.terms[t]
            body = self.format_term(t)
            if k == 0:
                pieces.append(body if c == 1 else f"{c}*{body}")
            else:
                sign = " - " if c < 0 else " + "
                a = abs(c)
                pieces.append(sign + (body if a == 1 else f"{a}*{body}"))
        return "".join(pieces)


def _member(M: SubMonoid, c: Charge) -> bool:
    r = submonoid_contains(M, c.coords)
    if r is UNDECIDED:
        raise VOAError("UNDECIDED", f"membership of {c.coords} could not be decided")
    return bool(r)


@lru_cache(maxsize=None)
def _unit_vectors(rank: int) -> tuple:
    return tuple(tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank))


def graded_dim(space: FockSpace, M: SubMonoid | None, n) -> int:
    return space.graded_dim(M, n)
