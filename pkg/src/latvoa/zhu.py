"""Zhu's ∘ and ∗ products and reductions to the presented algebras.

A reduction sends a canonical term h¹(-n₁-1)⋯hʳ(-n_r-1)e^γ to
(-1)^{n₁+⋯+n_r} · g(γ) · h̄¹⋯h̄ʳ computed in the target algebra, where g(γ)
is the generator attached to the charge (zero for charges without one) and
h̄ is the image of h under α ↦ x, β ↦ y.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .azalg import AP, RELATIONS, VA1, NormalFormElement, VBAlgebra, evaluate_relation
from .errors import VOAError
from .fock import FockSpace, FockTerm, FockVector, add_into
from .lattice import a2, a2_cocycle, borel_rank_one, parabolic_a2, rank_one, submonoid_contains
from .vertex import LatticeVOA, gbinom, _as_dict, _vec


def _homogeneous_parts(space: FockSpace, a) -> list[tuple[int, dict]]:
    parts = []
    for w, part in space.split_by_weight(_vec(dict(_as_dict(a)))).items():
        w = Fraction(w)
        if w.denominator != 1:
            raise VOAError("NONINTEGRAL_WEIGHT", f"weight {w} is not an integer")
        parts.append((int(w), part.terms))
    return parts


def _zhu_product(voa: LatticeVOA, a, b, shift: int) -> FockVector:
    acc: dict = {}
    for w, part in _homogeneous_parts(voa.space, a):
        for j in range(w + 1):
            add_into(acc, voa.mode_dict(part, j - shift, b), gbinom(w, j))
    return _vec(acc)


def circle(voa: LatticeVOA, a, b) -> FockVector:
    """a ∘ b = Σ_j C(wt a, j) a_{j-2} b."""
    return _zhu_product(voa, a, b, 2)


def star(voa: LatticeVOA, a, b) -> FockVector:
    """a ∗ b = Σ_j C(wt a, j) a_{j-1} b."""
    return _zhu_product(voa, a, b, 1)


class Reducer:
    """Normal-form map from a subVOA onto its presented Zhu algebra."""

    def __init__(self, kind: str, N: int = 1, space: FockSpace | None = None):
        kind = kind.upper()
        if kind not in ("VB", "VA1", "VP"):
            raise VOAError("BAD_TARGET", f"unknown reducer {kind!r}")
        self.kind = kind
        self.N = 1 if kind == "VA1" else N
        if kind == "VP":
            default = FockSpace(a2(), a2_cocycle())
            self.algebra = AP
            self.monoid = parabolic_a2()
        else:
            default = FockSpace(rank_one(self.N))
            self.algebra = VBAlgebra(self.N) if kind == "VB" else VA1
            self.monoid = borel_rank_one() if kind == "VB" else None
        self.space = space or default
        self._validate_space()
        self.voa = LatticeVOA(self.space)
        self._cache: dict = {}
        self._bars = self._make_bars()
        self._gens = self._make_gens()

    def _validate_space(self) -> None:
        lat = self.space.lattice
        if self.kind == "VP":
            ok = lat.gram == a2().gram and self.space.cocycle.signs == a2_cocycle().signs
        else:
            ok = lat.rank == 1 and lat.gram[0][0] == 2 * self.N
        if not ok:
            raise VOAError("CONTEXT_MISMATCH", f"{self.kind} reducer needs a matching lattice")

    def _make_bars(self) -> list[NormalFormElement]:
        if self.kind == "VP":
            return [AP.gen("x"), AP.gen("y")]
        return [self.algebra.gen("x")]

    def _make_gens(self) -> dict:
        if self.kind == "VP":
            return {(0, 0): AP.one(), (1, 0): AP.gen("xa"), (-1, 0): AP.gen("xna"),
                    (0, 1): AP.gen("xb"), (1, 1): AP.gen("xab")}
        gens = {(0,): self.algebra.one(), (1,): self.algebra.gen("y")}
        if self.kind == "VA1":
            gens[(-1,)] = VA1.gen("z")
        return gens

    def _allowed(self, coords: tuple) -> bool:
        if any(Fraction(c).denominator != 1 for c in coords):
            return False
        if self.kind == "VP":
            return bool(submonoid_contains(self.monoid, coords))
        if self.kind == "VB":
            return coords[0] >= 0
        return True

    def reduce_term(self, t: FockTerm) -> NormalFormElement:
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        coords = tuple(int(c) for c in t.charge.coords) if not t.charge.lam else None
        if coords is None or not self._allowed(coords):
            raise VOAError("BAD_CHARGE", f"charge {t.charge.coords} lies outside the {self.kind} subalgebra")
        gen = self._gens.get(coords)
        if gen is None:
            res = self.algebra.zero()
        else:
            res = gen
            sign = 1
            for idx, mode in t.factors:
                res = res * self._bars[idx]
                sign *= (-1) ** (mode - 1)
            res = res * sign
        self._cache[t] = res
        return res

    def reduce(self, v) -> NormalFormElement:
        out: dict = {}
        for t, c in _as_dict(v).items():
            for w, cw in self.reduce_term(t).coeffs.items():
                out[w] = out.get(w, 0) + c * cw
        return NormalFormElement(self.algebra, out)

    __call__ = reduce

    def circle(self, a, b) -> FockVector:
        return circle(self.voa, a, b)

    def star(self, a, b) -> FockVector:
        return star(self.voa, a, b)

    def basis(self, weight_cutoff, charge_box: int | None = None) -> list[FockTerm]:
        """Canonical basis of the subVOA up to ``weight_cutoff``."""
        terms = self.space.basis(self.monoid, weight_cutoff)
        if charge_box is not None:
            terms = [t for t in terms if all(abs(c) <= charge_box for c in t.charge.coords)]
        return terms

    def generator_states(self) -> dict[str, FockVector]:
        sp = self.space
        if self.kind == "VP":
            return {"x": sp.state([(0, 1)]), "y": sp.state([(1, 1)]), "xa": sp.exp(1, 0),
                    "xna": sp.exp(-1, 0), "xb": sp.exp(0, 1), "xab": sp.exp(1, 1)}
        gens = {"x": sp.state([(0, 1)]), "y": sp.exp(1)}
        if self.kind == "VA1":
            gens["z"] = sp.exp(-1)
        return gens


def reduce_B(v, N: int) -> NormalFormElement:
    return _reducer("VB", N).reduce(v)


def reduce_A1(v) -> NormalFormElement:
    return _reducer("VA1", 1).reduce(v)


def reduce_P(v) -> NormalFormElement:
    return _reducer("VP", 1).reduce(v)


_REDUCERS: dict = {}


def _reducer(kind: str, N: int) -> Reducer:
    key = (kind, N)
    if key not in _REDUCERS:
        _REDUCERS[key] = Reducer(kind, N)
    return _REDUCERS[key]


def get_reducer(kind: str, N: int = 1) -> Reducer:
    """A shared reducer; its mode caches persist across calls."""
    return _reducer(kind.upper(), N)


def zhu_identity_checks(reducer: Reducer, a, b) -> bool:
    """The two congruences for a∗b and a∗b - b∗a modulo O(V)."""
    voa, red = reducer.voa, reducer.reduce
    ab = star(voa, a, b)
    ba = star(voa, b, a)
    lhs1 = red(ab)
    rhs1 = reducer.algebra.zero()
    for wb, part in _homogeneous_parts(voa.space, b):
        if wb >= 1:
            rhs1 = rhs1 + red(voa.weighted_residue(part, a, wb - 1, 1))
        else:
            # wt b = 0 means b is a multiple of vac and b∗a = a∗b
            rhs1 = rhs1 + red(star(voa, a, part))
    lhs2 = red(ab) - red(ba)
    rhs2 = reducer.algebra.zero()
    for wa, part in _homogeneous_parts(voa.space, a):
        if wa >= 1:
            rhs2 = rhs2 + red(voa.weighted_residue(part, b, wa - 1, 0))
    return lhs1 == rhs1 and lhs2 == rhs2


def verify_O_vanishing(reducer: Reducer, weight_cutoff, charge_box: int | None = None) -> dict:
    """reduce(a ∘ b) for all basis pairs within the cutoffs; lists nonzero cases."""
    basis = reducer.basis(weight_cutoff, charge_box)
    failures = []
    count = 0
    for at in basis:
        for bt in basis:
            count += 1
            val = reducer.reduce(reducer.circle({at: 1}, {bt: 1}))
            if not val.is_zero():
                failures.append((at, bt, val))
    return {"basis_size": len(basis), "pairs": count, "failures": failures}


def verify_vanishing_family(reducer: Reducer, a, b, max_m: int = 2) -> bool:
    """reduce(Res Y(a,z)b (1+z)^(wt a + n)/z^(2+m)) = 0 for 0 ≤ n ≤ m ≤ max_m."""
    voa = reducer.voa
    for wa, part in _homogeneous_parts(voa.space, a):
        for m in range(max_m + 1):
            for n in range(m + 1):
                if not reducer.reduce(voa.weighted_residue(part, b, wa + n, 2 + m)).is_zero():
                    return False
    return True


def verify_homomorphism(reducer: Reducer, a, b) -> bool:
    """reduce(a ∗ b) = reduce(a)·reduce(b)."""
    return reducer.reduce(reducer.star(a, b)) == reducer.reduce(a) * reducer.reduce(b)


def relation_in_voa(reducer: Reducer, rel: Sequence) -> NormalFormElement:
    """Evaluate a relation on generator states with ∗ and reduce it."""
    gens = reducer.generator_states()
    value = evaluate_relation(
        rel, gens,
        lambda a, b: reducer.star(a, b), lambda a, b: a + b, lambda a, c: a * c,
        reducer.space.vacuum(),
    )
    return reducer.reduce(value)


def presentation_checks(reducer: Reducer | None = None) -> list[tuple[str, bool]]:
    """Each defining relation of A_P, evaluated through ∗ in V_P."""
    reducer = reducer or get_reducer("VP")
    return [(name, relation_in_voa(reducer, rel).is_zero()) for name, rel in RELATIONS]


def random_state(space: FockSpace, terms: Sequence[FockTerm], rng: random.Random, size: int = 2) -> FockVector:
    """A random combination of ``size`` basis terms sharing one weight."""
    first = rng.choice(terms)
    w = space.weight(first)
    same = [t for t in terms if space.weight(t) == w]
    out: dict = {}
    for t in rng.sample(same, min(size, len(same))):
        out[t] = out.get(t, 0) + Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2))
    return _vec({t: c for t, c in out.items() if c})


class ZhuReducer:
    """Fit/transform wrapper mapping states to Zhu-algebra normal forms.

    ``fit`` builds the reducer for the configured target; ``transform`` maps
    an iterable of FockVectors (or parsed expressions) to NormalFormElements.
    """

    def __init__(self, target: str = "vb", N: int = 1):
        self.target = target
        self.N = N

    def get_params(self, deep: bool = True) -> dict:
        return {"target": self.target, "N": self.N}

    def set_params(self, **params) -> "ZhuReducer":
        for key, value in params.items():
            if key not in ("target", "N"):
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def fit(self, X=None, y=None) -> "ZhuReducer":
        self.reducer_ = Reducer(self.target, self.N)
        return self

    def transform(self, X: Iterable) -> list[NormalFormElement]:
        if not hasattr(self, "reducer_"):
            raise VOAError("NOT_FITTED", "call fit before transform")
        return [self.reducer_.reduce(v) for v in X]

    def fit_transform(self, X: Iterable, y=None) -> list[NormalFormElement]:
        return self.fit(X).transform(X)
