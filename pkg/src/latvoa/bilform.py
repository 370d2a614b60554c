"""Invariant bilinear form on V_L and quasi-triangular decomposition checks.

The form is fixed by (vac|vac) = 1, charge orthogonality, the adjoint rule
(h(-m)u|v) = -(u|h(m)v), and base pairings κ_γ = (e^γ|e^{-γ}).
Invariance on (e^γ, e^{-γ}, vac) forces κ_γ = (-1)^{|γ|²/2} ε(γ,-γ).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import _linalg
from .errors import VOAError
from .fock import FockSpace, FockTerm, _unit_vectors
from .lattice import SubMonoid, submonoid_contains
from .vertex import LatticeVOA, _as_dict, _vec


@dataclass
class FormContext:
    """Base pairings κ_γ keyed by charge coordinates; κ_0 = 1."""

    space: FockSpace
    base_pairings: dict = field(default_factory=dict)

    def __post_init__(self):
        self.base_pairings.setdefault((0,) * self.space.rank, Fraction(1))
        self._cache: dict = {}

    def kappa(self, coords: tuple) -> Fraction:
        try:
            return self.base_pairings[coords]
        except KeyError:
            raise VOAError("MISSING_BASE_PAIRING", f"no κ for charge {coords}") from None


def _strip(space: FockSpace, t: FockTerm) -> tuple:
    """Split the first factor off a term: returns (h unit vector, mode, rest)."""
    idx, mode = t.factors[0]
    return _unit_vectors(space.rank)[idx], mode, FockTerm(t.factors[1:], t.charge)


def _form_terms(ctx: FormContext, s: FockTerm, t: FockTerm) -> Fraction:
    key = (s, t)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    space = ctx.space
    if any(a + b for a, b in zip(s.charge.coords, t.charge.coords)) or s.charge.lam or t.charge.lam:
        val = Fraction(0)
    elif s.level != t.level:
        val = Fraction(0)
    elif s.factors:
        h, m, rest = _strip(space, s)
        val = Fraction(0)
        for t2, c in space.act_dict(h, m, {t: 1}).items():
            val -= c * _form_terms(ctx, rest, t2)
    elif t.factors:
        val = Fraction(0)  # annihilators kill e^γ
    else:
        val = Fraction(ctx.kappa(tuple(s.charge.coords)))
    ctx._cache[key] = val
    return val


def form(ctx: FormContext, u, v) -> Fraction:
    """(u|v)."""
    total = Fraction(0)
    vd = _as_dict(v)
    for s, cs in _as_dict(u).items():
        for t, ct in vd.items():
            total += cs * ct * _form_terms(ctx, s, t)
    return total


def invariance_sides(voa: LatticeVOA, ctx: FormContext, a, b, c, n: int) -> tuple[Fraction, Fraction]:
    """(a_n b|c) and (-1)^{wt a} Σ_j (1/j!) (b|(L(1)^j a)_{2wt a - j - n - 2} c)."""
    space = voa.space
    lhs = form(ctx, voa.state_mode(a, n, b), c)
    rhs = Fraction(0)
    for w, part in space.split_by_weight(_vec(dict(_as_dict(a)))).items():
        w = Fraction(w)
        if w.denominator != 1:
            raise VOAError("NONINTEGRAL_WEIGHT", f"weight {w}")
        w = int(w)
        cur = part.terms
        for j in range(w + 1):
            if not cur:
                break
            mode = voa.mode_dict(cur, 2 * w - j - n - 2, c)
            rhs += (-1) ** w * Fraction(1, math.factorial(j)) * form(ctx, b, mode)
            cur = voa._virasoro_dict(1, cur)
    return lhs, rhs


def invariance_check(voa: LatticeVOA, ctx: FormContext, a, b, c, n: int) -> bool:
    lhs, rhs = invariance_sides(voa, ctx, a, b, c, n)
    return lhs == rhs


def calibrate_base_pairings(voa: LatticeVOA, charges: Iterable[Sequence]) -> FormContext:
    """Solve for κ from invariance on (e^γ, e^{-γ}, vac) at n = |γ|² - 1."""
    space = voa.space
    ctx = FormContext(space)
    vac = space.vacuum()
    for coords in charges:
        gamma = space.charge(*coords)
        if not any(gamma.coords):
            continue
        norm = Fraction(space.charge_norm(gamma))
        n = int(norm) - 1
        a, b = space.exp(*gamma.coords), space.exp(*(-gamma).coords)
        lhs = voa.state_mode(a, n, b).coefficient(next(iter(vac.terms)))
        wt = int(norm / 2)
        top = voa.state_mode(a, 2 * wt - n - 2, vac).coefficient(next(iter(a.terms)))
        # lhs·κ_0 = (-1)^wt · top · κ_{-γ}
        value = Fraction(lhs) * (-1) ** wt / top
        key = tuple((-gamma).coords)
        old = ctx.base_pairings.get(key)
        if old is not None and old != value:
            raise VOAError("INCONSISTENT", f"κ{key} is both {old} and {value}")
        ctx.base_pairings[key] = value
    return ctx


def context_for(voa: LatticeVOA, max_weight) -> FormContext:
    """Calibrated context covering every charge up to ``max_weight``."""
    charges = [c.coords for c in voa.space.charges_up_to(max_weight)]
    return calibrate_base_pairings(voa, charges)


def gram_rank(ctx: FormContext, terms: Sequence[FockTerm]) -> int:
    rows = [[_form_terms(ctx, s, t) for t in terms] for s in terms]
    return _linalg.rank(rows) if rows else 0


# ---------------------------------------------------------------------------
# Quasi-triangular decompositions

ChargePredicate = Callable[[tuple], bool]


@dataclass
class DecompositionSpec:
    """Three charge predicates partitioning the lattice."""

    name: str
    plus: ChargePredicate
    h_part: ChargePredicate
    minus: ChargePredicate

    def parts(self) -> dict[str, ChargePredicate]:
        return {"+": self.plus, "H": self.h_part, "-": self.minus}

    def part_of(self, coords: tuple) -> str:
        hits = [k for k, p in self.parts().items() if p(coords)]
        if len(hits) != 1:
            raise VOAError("NOT_A_PARTITION", f"charge {coords} lies in parts {hits}")
        return hits[0]


def rank_one_split() -> DecompositionSpec:
    """V_{ℤα} = V_{ℤ>0 α} ⊕ M(1,0) ⊕ V_{ℤ<0 α}."""
    return DecompositionSpec("rank-one", lambda c: c[0] > 0, lambda c: c[0] == 0, lambda c: c[0] < 0)


def a2_borel_split() -> DecompositionSpec:
    """V_{A₂} = V_{N+} ⊕ M(1,0) ⊕ V_{N-}, N+ = {β-coefficient > 0} ∪ ℤ_{>0}α."""
    def plus(c):
        return c[1] > 0 or (c[1] == 0 and c[0] > 0)

    def minus(c):
        return c[1] < 0 or (c[1] == 0 and c[0] < 0)

    return DecompositionSpec("A2-borel", plus, lambda c: c[0] == 0 and c[1] == 0, minus)


def a2_parabolic_split() -> DecompositionSpec:
    """V_{A₂} = V^+ ⊕ V_T ⊕ V^- with N^± = ℤα ⊕ ℤ_{≷0}β and T = ℤα."""
    return DecompositionSpec("A2-parabolic", lambda c: c[1] > 0, lambda c: c[1] == 0, lambda c: c[1] < 0)


def quasi_triangular_check(
    voa: LatticeVOA, spec: DecompositionSpec, ctx: FormContext, weight_cutoff, mode_cutoff: int,
    parabolic: SubMonoid | None = None,
) -> dict:
    """Finite checks of the decomposition axioms; returns {check name: list of violations}.

    With ``parabolic`` given, also confirms that V_M = V_+ ⊕ V_H on the basis.
    """
    space = voa.space
    basis = space.basis(None, weight_cutoff)
    part = {t: spec.part_of(tuple(t.charge.coords)) for t in basis}
    report: dict[str, list] = {
        "sl2-stable": [], "H-subalgebra": [], "vacuum-in-H": [], "pm-subalgebras": [],
        "orthogonality": [], "graded-splitting": [], "isotropy": [], "H-nondegenerate": [],
        "H-acts-on-pm": [], "P-is-plus-and-H": [],
    }
    if parabolic is not None:
        for t in basis:
            inside = bool(submonoid_contains(parabolic, tuple(t.charge.coords)))
            if inside != (part[t] in ("+", "H")):
                report["P-is-plus-and-H"].append(space.format_term(t))
    if spec.part_of((0,) * space.rank) != "H":
        report["vacuum-in-H"].append("vacuum outside V_H")

    def parts_of(vec: dict) -> set:
        return {spec.part_of(tuple(t.charge.coords)) for t in vec}

    for t in basis:
        for n in (-1, 0, 1):
            out = voa._virasoro_dict(n, {t: 1})
            if out and parts_of(out) != {part[t]}:
                report["sl2-stable"].append((n, space.format_term(t)))

    for a in basis:
        for b in basis:
            pa, pb = part[a], part[b]
            for j in range(-mode_cutoff, mode_cutoff + 1):
                out = voa.mode_dict({a: 1}, j, {b: 1})
                if not out:
                    continue
                got = parts_of(out)
                if pa == pb == "H" and got != {"H"}:
                    report["H-subalgebra"].append((space.format_term(a), j, space.format_term(b)))
                elif pa == pb != "H" and got != {pa}:
                    report["pm-subalgebras"].append((space.format_term(a), j, space.format_term(b)))
                elif {pa, pb} in ({"H", "+"}, {"H", "-"}):
                    side = pa if pa != "H" else pb
                    if got != {side}:
                        report["H-acts-on-pm"].append((space.format_term(a), j, space.format_term(b)))

    by_weight: dict = {}
    for t in basis:
        by_weight.setdefault(space.weight(t), {"+": [], "H": [], "-": []})[part[t]].append(t)
    for w, groups in sorted(by_weight.items()):
        total = space.graded_dim(None, w)
        if sum(len(g) for g in groups.values()) != total:
            report["graded-splitting"].append(w)
        for p1, p2 in (("+", "+"), ("-", "-"), ("H", "+"), ("H", "-")):
            for s in groups[p1]:
                for t in groups[p2]:
                    if _form_terms(ctx, s, t):
                        report["orthogonality"].append((p1, p2, space.format_term(s), space.format_term(t)))
        for p in ("+", "-"):
            g = groups[p]
            if g and gram_rank(ctx, g) != 0:
                report["isotropy"].append((p, w))
        h = groups["H"]
        if h and gram_rank(ctx, h) != len(h):
            report["H-nondegenerate"].append(w)
    return report


def quasi_triangular_ok(report: dict) -> bool:
    return all(not v for v in report.values())


def random_triples(space: FockSpace, count: int, seed: int, max_weight=2) -> list:
    """Seeded (a, b, c, n) with charges summing to zero and n ∈ [-3, 3].

    Most samples pick n so that wt(a_n b) = wt c, where both sides can be
    nonzero; the rest draw n uniformly.
    """
    rng = random.Random(seed)
    basis = space.basis(None, max_weight)
    by_charge: dict = {}
    for t in basis:
        by_charge.setdefault(tuple(t.charge.coords), []).append(t)
    out = []
    while len(out) < count:
        a = rng.choice(basis)
        b = rng.choice(basis)
        target = tuple(-(x + y) for x, y in zip(a.charge.coords, b.charge.coords))
        pool = by_charge.get(target)
        if not pool:
            continue
        c = rng.choice(pool)
        n = int(space.weight(a) + space.weight(b) - space.weight(c) - 1)
        if not -3 <= n <= 3 or rng.random() < 0.2:
            n = rng.randint(-3, 3)
        out.append((_vec({a: 1}), _vec({b: 1}), _vec({c: 1}), n))
    return out
