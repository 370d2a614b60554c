"""Vertex-operator modes on lattice Fock spaces and axiom checkers.

Modes of e^γ come from Y(e^γ,z) = E⁻(-γ,z)E⁺(-γ,z)e_γ z^γ. Modes of a
general state are obtained by peeling one creation factor at a time:

    (h(-m-1)v)_k b = Σ_{j<0} C(-j-1,m) h(j) v_{k-j-m-1} b
                   + Σ_{j≥0} C(-j-1,m) v_{k-j-m-1} (h(j) b)

Both sums are finite because weights are bounded below in each charge
sector.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import _linalg
from .errors import VOAError
from .fock import Charge, FockSpace, FockTerm, FockVector, _unit_vectors, add_into, sort_factors
from .lattice import UNDECIDED, SubMonoid, submonoid_contains


@lru_cache(maxsize=None)
def gbinom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for any integer n and k ≥ 0."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def _as_dict(v) -> dict:
    return v.terms if isinstance(v, FockVector) else v


def _vec(d: dict) -> FockVector:
    out = FockVector()
    out.terms = d
    return out


class LatticeVOA:
    """Mode computations on a :class:`FockSpace`.

    The same engine serves module sectors: pass a space whose charges carry
    λ or a rational shift, and states ``a`` with integral charge.
    """

    def __init__(self, space: FockSpace):
        self.space = space
        self.rank = space.rank
        self._units = _unit_vectors(self.rank)
        self._dual = space.lattice.dual_basis()
        self._mode_cache: dict = {}
        self._tplus_cache: dict = {}
        self._schur_cache: dict = {}
        self._weight_cache: dict = {}

    def clear_cache(self) -> None:
        self._mode_cache.clear()
        self._tplus_cache.clear()
        self._schur_cache.clear()
        self._weight_cache.clear()

    # -- helpers -----------------------------------------------------------

    def wt(self, t: FockTerm):
        w = self._weight_cache.get(t)
        if w is None:
            w = self.space.weight(t)
            self._weight_cache[t] = w
        return w

    def top_index(self, at: FockTerm, bt: FockTerm):
        """Largest k for which at_k bt can be nonzero."""
        c = at.charge + bt.charge
        return math.floor(self.wt(at) + self.wt(bt) - 1 - Fraction(self.space.min_weight(c)))

    def top(self, a, b) -> int | None:
        tops = [self.top_index(s, t) for s in _as_dict(a) for t in _as_dict(b)]
        return max(tops) if tops else None

    def _schur(self, gamma: tuple, i: int) -> dict:
        """Coefficient of zⁱ in E⁻(-γ,z) = exp(Σ_{m>0} γ(-m) zᵐ/m)."""
        key = (gamma, i)
        hit = self._schur_cache.get(key)
        if hit is not None:
            return hit
        if i == 0:
            res = {(): Fraction(1)}
        else:
            res: dict = {}
            for m in range(1, i + 1):
                for fs, c in self._schur(gamma, i - m).items():
                    for idx, g in enumerate(gamma):
                        if g:
                            nfs = sort_factors(fs + ((idx, m),))
                            res[nfs] = res.get(nfs, 0) + c * g
            res = {fs: c / i for fs, c in res.items() if c}
        self._schur_cache[key] = res
        return res

    def _annihilate(self, prods: tuple, m: int, poly: dict) -> dict:
        out: dict = {}
        for fs, c in poly.items():
            seen = set()
            for pos, f in enumerate(fs):
                i, mode = f
                if mode != m or not prods[i] or f in seen:
                    continue
                seen.add(f)
                mult = fs.count(f)
                nfs = fs[:pos] + fs[pos + 1:]
                out[nfs] = out.get(nfs, 0) + c * m * prods[i] * mult
        return {k: v for k, v in out.items() if v}

    def _tplus(self, gamma: tuple, factors: tuple) -> list:
        """Terms of E⁺(-γ,z) = exp(-Σ_{m>0} γ(m) z^(-m)/m) applied to a factor monomial."""
        key = (gamma, factors)
        hit = self._tplus_cache.get(key)
        if hit is not None:
            return hit
        prods = tuple(self.space.lattice.raw_pairing(gamma, e) for e in self._units)
        level = sum(m for _, m in factors)
        series = [{factors: Fraction(1)}]
        for j in range(1, level + 1):
            acc: dict = {}
            for m in range(1, j + 1):
                add_into(acc, self._annihilate(prods, m, series[j - m]), -1)
            series.append({fs: c / j for fs, c in acc.items() if c})
        self._tplus_cache[key] = series
        return series

    # -- modes ---------------------------------------------------------------

    def _exp_term(self, gamma: Charge, n: int, t: FockTerm) -> dict:
        if gamma.lam:
            raise VOAError("BAD_CHARGE", "vertex operators need lattice charges")
        theta = t.charge
        p = Fraction(self.space.pair_charges(gamma, theta))
        if p.denominator != 1:
            raise VOAError("NONINTEGRAL_SHIFT", f"(γ|θ) = {p} is not an integer")
        p = int(p)
        new_charge = gamma + theta
        series = self._tplus(gamma.coords, t.factors)
        sign = None
        out: dict = {}
        for j, tj in enumerate(series):
            i = j - n - 1 - p
            if i < 0 or not tj:
                continue
            if sign is None:
                sign = self.space.cocycle_sign(gamma, theta)
            schur = self._schur(gamma.coords, i)
            for sf, sc in schur.items():
                for tf, tc in tj.items():
                    key = FockTerm(sort_factors(sf + tf) if sf and tf else (sf or tf), new_charge)
                    val = out.get(key, 0) + sign * sc * tc
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        return out

    def exp_mode(self, gamma: Charge | Sequence, n: int, b: FockVector) -> FockVector:
        """(e^γ)_n b."""
        if not isinstance(gamma, Charge):
            gamma = self.space.charge(*gamma)
        acc: dict = {}
        for t, c in _as_dict(b).items():
            add_into(acc, self._exp_term(gamma, n, t), c)
        return _vec(acc)

    def _mode_term(self, at: FockTerm, n: int, bt: FockTerm) -> dict:
        key = (at, n, bt)
        hit = self._mode_cache.get(key)
        if hit is not None:
            return hit
        if n > self.top_index(at, bt):
            res: dict = {}
        elif not at.factors:
            res = self._exp_term(at.charge, n, bt)
        else:
            res = self._peel(at, n, bt)
        self._mode_cache[key] = res
        return res

    def _peel(self, at: FockTerm, n: int, bt: FockTerm) -> dict:
        space = self.space
        idx, mode = at.factors[0]
        m = mode - 1
        h = self._units[idx]
        v = FockTerm(at.factors[1:], at.charge)
        acc: dict = {}
        # creation part, j < 0
        wv, wb = self.wt(v), self.wt(bt)
        floor = Fraction(space.min_weight(v.charge + bt.charge))
        j = -1
        while True:
            ell = n - j - m - 1
            if wv + wb - ell - 1 < floor:
                break
            coef = gbinom(-j - 1, m)
            if coef:
                inner = self._mode_term(v, ell, bt)
                if inner:
                    add_into(acc, space.act_dict(h, j, inner), coef)
            j -= 1
        # annihilation part, j ≥ 0
        for j in range(0, bt.level + 1):
            hb = space.act_dict(h, j, {bt: 1})
            if not hb:
                continue
            coef = gbinom(-j - 1, m)
            ell = n - j - m - 1
            for t2, c2 in hb.items():
                inner = self._mode_term(v, ell, t2)
                if inner:
                    add_into(acc, inner, coef * c2)
        return acc

    def mode_dict(self, a, n: int, b) -> dict:
        acc: dict = {}
        bd = _as_dict(b)
        for at, ca in _as_dict(a).items():
            for bt, cb in bd.items():
                res = self._mode_term(at, n, bt)
                if res:
                    add_into(acc, res, ca * cb)
        return acc

    def state_mode(self, a: FockVector, n: int, b: FockVector) -> FockVector:
        """a_n b for arbitrary states a, b."""
        return _vec(self.mode_dict(a, n, b))

    mode = state_mode

    def weighted_residue(self, a: FockVector, b: FockVector, p: int, q: int) -> FockVector:
        """Res_z Y(a,z)b (1+z)^p / z^q = Σ_{j=0}^{p} C(p,j) a_{j-q} b."""
        if p < 0:
            raise VOAError("BAD_EXPONENT", "p must be nonnegative")
        acc: dict = {}
        for j in range(p + 1):
            add_into(acc, self.mode_dict(a, j - q, b), gbinom(p, j))
        return _vec(acc)

    # -- Virasoro --------------------------------------------------------------

    def _virasoro_dict(self, n: int, vec: dict) -> dict:
        space = self.space
        acc: dict = {}
        for t, c in vec.items():
            level = t.level
            single = {t: c}
            for p in range(n - level, level + 1):
                q = n - p
                for i in range(self.rank):
                    dual, unit = self._dual[i], self._units[i]
                    if p >= q:
                        first = space.act_dict(dual, p, single)
                        if first:
                            add_into(acc, space.act_dict(unit, q, first), Fraction(1, 2))
                    else:
                        first = space.act_dict(unit, q, single)
                        if first:
                            add_into(acc, space.act_dict(dual, p, first), Fraction(1, 2))
        return acc

    def virasoro_mode(self, n: int, v: FockVector) -> FockVector:
        """L(n)v with ω = ½Σᵢ uⁱ(-1)uᵢ(-1)vac over the Gram-dual basis."""
        return _vec(self._virasoro_dict(n, _as_dict(v)))

    def omega(self) -> FockVector:
        raw = [
            (Fraction(1, 2), [(self._dual[i], -1), (self._units[i], -1)], self.space.zero_charge())
            for i in range(self.rank)
        ]
        return self.space.normalize(raw)

    # -- axiom checks ------------------------------------------------------

    def borcherds_sides(self, a, b, c, m: int, n: int, k: int) -> tuple[FockVector, FockVector]:
        lhs: dict = {}
        top_ab = self.top(a, b)
        if top_ab is not None:
            jmax = top_ab - n
            if m >= 0:
                jmax = min(jmax, m)
            for j in range(0, jmax + 1):
                coef = gbinom(m, j)
                if coef:
                    inner = self.mode_dict(a, n + j, b)
                    if inner:
                        add_into(lhs, self.mode_dict(inner, m + k - j, c), coef)
        rhs: dict = {}
        bounds = [t for t in (self.top(b, c), self.top(a, c)) if t is not None]
        if bounds:
            jmax = max(self.top(b, c) - k if self.top(b, c) is not None else -1,
                       self.top(a, c) - m if self.top(a, c) is not None else -1)
            if n >= 0:
                jmax = min(jmax, n)
            sign_n = -1 if n % 2 else 1
            for j in range(0, jmax + 1):
                coef = gbinom(n, j) * (-1 if j % 2 else 1)
                if not coef:
                    continue
                bc = self.mode_dict(b, k + j, c)
                if bc:
                    add_into(rhs, self.mode_dict(a, m + n - j, bc), coef)
                ac = self.mode_dict(a, m + j, c)
                if ac:
                    add_into(rhs, self.mode_dict(b, n + k - j, ac), -coef * sign_n)
        return _vec(lhs), _vec(rhs)

    def borcherds_check(self, a, b, c, m: int, n: int, k: int) -> bool:
        lhs, rhs = self.borcherds_sides(a, b, c, m, n, k)
        return lhs == rhs

    def skew_sides(self, a, b, n: int) -> tuple[FockVector, FockVector]:
        lhs = self.state_mode(a, n, b)
        rhs: dict = {}
        top = self.top(b, a)
        if top is not None:
            for i in range(0, top - n + 1):
                cur = self.mode_dict(b, n + i, a)
                for _ in range(i):
                    if not cur:
                        break
                    cur = self._virasoro_dict(-1, cur)
                if cur:
                    sign = -1 if (n + i + 1) % 2 else 1
                    add_into(rhs, cur, Fraction(sign, math.factorial(i)))
        return lhs, _vec(rhs)

    def skew_symmetry_check(self, a, b, n: int) -> bool:
        lhs, rhs = self.skew_sides(a, b, n)
        return lhs == rhs

    def normalizer_check(self, M: SubMonoid, a: FockVector, mode_cutoff: int, weight_cutoff) -> bool:
        """Finite evidence that a_j V_M ⊆ V_M for 0 ≤ j ≤ mode_cutoff."""
        return self.normalizer_witness(M, a, mode_cutoff, weight_cutoff) is None

    def normalizer_witness(self, M: SubMonoid, a: FockVector, mode_cutoff: int, weight_cutoff):
        """First (j, w) with charge(a_j w) outside M, or None."""
        for w in self.space.basis(M, weight_cutoff):
            for at in a.terms:
                target = at.charge + w.charge
                r = submonoid_contains(M, target.coords)
                if r is UNDECIDED:
                    raise VOAError("UNDECIDED", f"membership of {target.coords} undecided")
                if r:
                    continue
                for j in range(0, mode_cutoff + 1):
                    if self.mode_dict(a, j, {w: 1}):
                        return (j, w)
        return None

    def strong_generation_report(self, U: Iterable[FockVector], M: SubMonoid | None, weight_cutoff) -> dict:
        """Per weight: (dimension of the iterated-mode span, graded_dim)."""
        space = self.space
        weight_cutoff = Fraction(weight_cutoff)
        gens = []
        for u in U:
            for w, part in space.split_by_weight(u).items():
                if w > 0:
                    gens.append((Fraction(w), part.terms))
        pieces: dict = {Fraction(0): [space.vacuum().terms]}
        weights = sorted({Fraction(space.weight(t)) for t in space.basis(M, weight_cutoff)} | {Fraction(0)})
        for w in weights:
            if w == 0:
                continue
            vecs = []
            for ws, basis in list(pieces.items()):
                for wu, u in gens:
                    nn = w - wu - ws + 1
                    if nn < 1 or nn.denominator != 1:
                        continue
                    for s in basis:
                        r = self.mode_dict(u, -int(nn), s)
                        if r:
                            vecs.append(r)
            pieces[w] = _reduce_span(vecs)
        report = {}
        for w in weights:
            report[w] = (len(pieces.get(w, [])), space.graded_dim(M, w))
        return report

    def strong_generation_check(self, U: Iterable[FockVector], M: SubMonoid | None, weight_cutoff) -> bool:
        report = self.strong_generation_report(U, M, weight_cutoff)
        return all(got == want for got, want in report.values())


def _reduce_span(vecs: list[dict]) -> list[dict]:
    """A basis (as dicts) of the span of ``vecs``."""
    if not vecs:
        return []
    index = sorted({t for v in vecs for t in v}, key=repr)
    pos = {t: i for i, t in enumerate(index)}
    rows = []
    for v in vecs:
        row = [0] * len(index)
        for t, c in v.items():
            row[pos[t]] = c
        rows.append(row)
    basis = _linalg.row_basis(rows)
    return [{index[i]: c for i, c in enumerate(row) if c} for row in basis]


def span_dimension(vecs: Iterable) -> int:
    return len(_reduce_span([_as_dict(v) for v in vecs]))
