"""Modules over V_B and V_P built on λ-shifted Fock spaces.

Module vectors are Fock terms whose charge carries λ. For V_P the charges
are nα + ε + λ with ε ∈ {0, ½α} and (λ|α) = 0; charges of V_P in
I = ℤα ⊕ ℤ_{>0}β act by zero, the rest act through the lattice mode engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .azalg import APAlgebra, RELATIONS, evaluate_relation
from .errors import VOAError
from .fock import Charge, FockSpace, FockTerm, FockVector, LambdaSpec, add_into, colored_partitions
from .lattice import a2, a2_cocycle, parabolic_a2, rank_one
from .vertex import LatticeVOA, _as_dict, _reduce_span, _vec

HALF = Fraction(1, 2)

Matrix = list  # list of rows of Fractions


@dataclass(frozen=True)
class VBModuleSpec:
    """M(1,λ) over V_B: (α|λ) and (λ|λ)."""

    pairing_alpha_lambda: Fraction
    lambda_norm: Fraction = Fraction(0)
    N: int = 1


@dataclass(frozen=True)
class PModuleSpec:
    """L^(ε,λ) over V_P with ε = 0 or ½α."""

    epsilon: str
    pairing_beta_lambda: Fraction
    lambda_norm: Fraction = Fraction(0)

    def __post_init__(self):
        if self.epsilon not in ("0", "half"):
            raise VOAError("BAD_EPSILON", f"epsilon must be '0' or 'half', not {self.epsilon!r}")
        object.__setattr__(self, "pairing_beta_lambda", Fraction(self.pairing_beta_lambda))
        object.__setattr__(self, "lambda_norm", Fraction(self.lambda_norm))

    @property
    def shift(self) -> tuple:
        return (HALF, 0) if self.epsilon == "half" else (0, 0)


class VBModule:
    """M(1,λ) as a V_B-module; nonzero charges act by zero."""

    def __init__(self, spec: VBModuleSpec):
        self.spec = spec
        lam = LambdaSpec((spec.pairing_alpha_lambda,), spec.lambda_norm)
        self.space = FockSpace(rank_one(spec.N), lam=lam)
        self.voa = LatticeVOA(self.space)

    def bottom(self) -> FockVector:
        return self.space.exp(0, lam=True)

    def mode(self, a, n: int, w) -> FockVector:
        acc: dict = {}
        for at, ca in _as_dict(a).items():
            k = at.charge.coords[0]
            if at.charge.lam or Fraction(k).denominator != 1 or k < 0:
                raise VOAError("BAD_CHARGE", f"{at.charge.coords} is not in ℤ_{{≥0}}α")
            if k:
                continue
            add_into(acc, self.voa.mode_dict({at: ca}, n, w))
        return _vec(acc)


def vb_module_mode(a, n: int, w, spec: VBModuleSpec) -> FockVector:
    return _vb_module(spec).mode(a, n, w)


class PModule:
    """L^(0,λ) or L^(½α,λ) over V_P."""

    def __init__(self, spec: PModuleSpec):
        self.spec = spec
        lam = LambdaSpec((0, spec.pairing_beta_lambda), spec.lambda_norm)
        self.space = FockSpace(a2(), a2_cocycle(), lam=lam, shift=spec.shift)
        self.voa = LatticeVOA(self.space)
        self.vp_space = FockSpace(a2(), a2_cocycle())

    # -- grading -----------------------------------------------------------

    def charge(self, n: int) -> Charge:
        s = self.spec.shift[0]
        return self.space.charge(n + s, 0, lam=True)

    def bottom_weight(self) -> Fraction:
        base = Fraction(1, 4) if self.spec.epsilon == "half" else Fraction(0)
        return base + self.spec.lambda_norm / 2

    def lm0(self, t: FockTerm) -> Fraction:
        """L(0) eigenvalue: Σ modes + ½(nα+ε|nα+ε) + ½(λ|λ)."""
        return Fraction(self.space.weight(t))

    def level_basis(self, k: int) -> list[FockTerm]:
        """Canonical terms at weight bottom + k."""
        target = self.bottom_weight() + k
        out = []
        found = True
        radius = 0
        while found:
            found = False
            for n in {radius, -radius}:
                c = self.charge(n)
                level = target - Fraction(self.space.min_weight(c))
                if level >= 0:
                    found = True
                    if level.denominator == 1:
                        out.extend(FockTerm(fs, c) for fs in colored_partitions(int(level), 2))
            radius += 1
        return sorted(out, key=self.space.sort_key)

    def character(self, levels: int) -> list[int]:
        return [len(self.level_basis(k)) for k in range(levels)]

    def bottom(self) -> list[FockTerm]:
        return self.level_basis(0)

    # -- action ------------------------------------------------------------

    def _check_state(self, at: FockTerm) -> tuple:
        if at.charge.lam or any(Fraction(c).denominator != 1 for c in at.charge.coords):
            raise VOAError("BAD_CHARGE", f"{at.charge.coords} is not a lattice charge")
        m, k = (int(c) for c in at.charge.coords)
        if k < 0:
            raise VOAError("BAD_CHARGE", f"{at.charge.coords} is not in P")
        return m, k

    def mode_dict(self, a, n: int, w) -> dict:
        acc: dict = {}
        for at, ca in _as_dict(a).items():
            _, k = self._check_state(at)
            if k > 0:
                continue
            add_into(acc, self.voa.mode_dict({at: ca}, n, w))
        return acc

    def mode(self, a, n: int, w) -> FockVector:
        return _vec(self.mode_dict(a, n, w))

    def zero_mode_matrix(self, a, k: int = 0) -> Matrix:
        """Matrix of o(a) = a_{wt a - 1} on the level-k basis (columns are images)."""
        basis = self.level_basis(k)
        index = {t: i for i, t in enumerate(basis)}
        size = len(basis)
        mat = [[Fraction(0)] * size for _ in range(size)]
        for w, part in self.vp_space.split_by_weight(_vec(dict(_as_dict(a)))).items():
            w = Fraction(w)
            if w.denominator != 1:
                raise VOAError("NONINTEGRAL_WEIGHT", f"weight {w}")
            for j, t in enumerate(basis):
                for t2, c in self.mode_dict(part.terms, int(w) - 1, {t: 1}).items():
                    mat[index[t2]][j] += c
        return mat

    def generator_states(self) -> dict[str, FockVector]:
        sp = self.vp_space
        return {"x": sp.state([(0, 1)]), "y": sp.state([(1, 1)]), "xa": sp.exp(1, 0),
                "xna": sp.exp(-1, 0), "xb": sp.exp(0, 1), "xab": sp.exp(1, 1)}

    def bottom_matrices(self) -> dict[str, Matrix]:
        return {g: self.zero_mode_matrix(s, 0) for g, s in self.generator_states().items()}

    def expected_bottom_matrices(self) -> dict[str, Matrix]:
        q = self.spec.pairing_beta_lambda
        if self.spec.epsilon == "0":
            z = [[Fraction(0)]]
            return {"x": z, "y": [[q]], "xa": z, "xna": z, "xb": z, "xab": z}
        zero = [[Fraction(0)] * 2 for _ in range(2)]
        # basis order (e^-, e^+): charges -½α and ½α
        return {
            "x": [[Fraction(-1), 0], [0, Fraction(1)]],
            "y": [[q + HALF, 0], [0, q - HALF]],
            "xa": [[0, 0], [Fraction(1), 0]],
            "xna": [[0, Fraction(1)], [0, 0]],
            "xb": zero,
            "xab": zero,
        }

    # -- spanning ----------------------------------------------------------

    def spanning_dims(self, levels: int, generators: Sequence | None = None) -> list[tuple[int, int]]:
        """(saturated span dimension, character) for levels 0..levels-1."""
        gens = list(self.generator_states().values()) if generators is None else list(generators)
        gen_w = [(g, int(self.vp_space.homogeneous_weight(g))) for g in gens]
        span: dict[int, list[dict]] = {k: [] for k in range(levels)}
        span[0] = _reduce_span([{t: 1} for t in self.bottom()])
        frontier = [(0, v) for v in span[0]]
        while frontier:
            new_frontier = []
            for k, v in frontier:
                for g, wg in gen_w:
                    for target in range(levels):
                        n = wg + k - target - 1
                        r = self.mode_dict(g, n, v)
                        if not r:
                            continue
                        grown = _reduce_span(span[target] + [r])
                        if len(grown) > len(span[target]):
                            span[target] = grown
                            new_frontier.append((target, r))
            frontier = new_frontier
        return [(len(span[k]), len(self.level_basis(k))) for k in range(levels)]

    def spanning_check(self, levels: int, generators: Sequence | None = None) -> bool:
        return all(a == b for a, b in self.spanning_dims(levels, generators))


def bottom_action_check(spec: PModuleSpec) -> bool:
    mod = _p_module(spec)
    return mod.bottom_matrices() == mod.expected_bottom_matrices()


def p_module_mode(a, n: int, w, spec: PModuleSpec) -> FockVector:
    return _p_module(spec).mode(a, n, w)


def lm0(w, spec: PModuleSpec) -> Fraction:
    terms = list(_as_dict(w))
    if len(terms) != 1:
        raise VOAError("NOT_A_TERM", "lm0 needs a single canonical term")
    return _p_module(spec).lm0(terms[0])


def zero_mode_matrix(a, weight_level: int, spec: PModuleSpec) -> Matrix:
    return _p_module(spec).zero_mode_matrix(a, weight_level)


def spanning_check(spec: PModuleSpec, weight_levels: int) -> bool:
    return _p_module(spec).spanning_check(weight_levels)


_MODULES: dict = {}


def _p_module(spec: PModuleSpec) -> PModule:
    if spec not in _MODULES:
        _MODULES[spec] = PModule(spec)
    return _MODULES[spec]


def _vb_module(spec: VBModuleSpec) -> VBModule:
    if spec not in _MODULES:
        _MODULES[spec] = VBModule(spec)
    return _MODULES[spec]


def get_module(spec) -> PModule | VBModule:
    return _p_module(spec) if isinstance(spec, PModuleSpec) else _vb_module(spec)


# -- matrices ----------------------------------------------------------------


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def relation_residuals(matrices: dict) -> dict[str, Matrix]:
    """Value of each defining relation on the given generator matrices."""
    sizes = {len(m) for m in matrices.values()} | {len(r) for m in matrices.values() for r in m}
    missing = set(APAlgebra.generators) - set(matrices)
    if missing:
        raise VOAError("DIMENSION_MISMATCH", f"missing generators {sorted(missing)}")
    if len(sizes) != 1:
        raise VOAError("DIMENSION_MISMATCH", "matrices must be square of one size")
    n = sizes.pop()
    mats = {g: [[Fraction(x) for x in row] for row in m] for g, m in matrices.items()}
    return {
        name: evaluate_relation(rel, mats, mat_mul, mat_add, mat_scale, identity(n))
        for name, rel in RELATIONS
    }


def ap_module_relation_check(matrices: dict) -> bool:
    """Do the matrices satisfy every defining relation of A_P?"""
    return all(all(x == 0 for row in m for x in row) for m in relation_residuals(matrices).values())


def random_module_samples(mod: PModule, count: int, seed: int, max_level: int = 2):
    """Random (a, n, w) with a a V_P basis term and w a module basis term."""
    rng = random.Random(seed)
    vp_terms = mod.vp_space.basis(parabolic_a2(), 2)
    mod_terms = [t for k in range(max_level + 1) for t in mod.level_basis(k)]
    out = []
    for _ in range(count):
        at = rng.choice(vp_terms)
        wt = rng.choice(mod_terms)
        n = rng.randint(-2, int(mod.vp_space.weight(at)) + 1)
        out.append((at, n, wt))
    return out
