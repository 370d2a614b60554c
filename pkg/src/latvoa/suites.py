"""Named verification suites shared by the CLI and the test-suite.

Every suite returns a list of checks ``{"name", "pass", "witness"}``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from . import azalg, bilform, modvoa, zhu
from .errors import VOAError
from .fock import FockSpace
from .lattice import a2, a2_cocycle, borel_rank_one, parabolic_a2
from .vertex import LatticeVOA, _vec


def check(name: str, ok: bool, witness="") -> dict:
    return {"name": name, "pass": bool(ok), "witness": witness}


def is_a2(space: FockSpace) -> bool:
    return space.lattice.gram == a2().gram and space.cocycle.signs == a2_cocycle().signs


def rank_one_N(space: FockSpace) -> int:
    if space.rank != 1:
        raise VOAError("CONTEXT_MISMATCH", "suite needs a rank-one lattice")
    return space.lattice.gram[0][0] // 2


def require_a2(space: FockSpace) -> None:
    if not is_a2(space):
        raise VOAError("CONTEXT_MISMATCH", "suite needs the A2 lattice with its standard cocycle")


# ---------------------------------------------------------------- sampling


def random_triple_samples(space: FockSpace, count: int, seed: int, max_weight=3, mode_range=3) -> list:
    rng = random.Random(seed)
    basis = space.basis(None, max_weight)
    out = []
    for _ in range(count):
        a, b, c = (rng.choice(basis) for _ in range(3))
        m, n, k = (rng.randint(-mode_range, mode_range) for _ in range(3))
        out.append(({a: 1}, {b: 1}, {c: 1}, m, n, k))
    return out


def random_pair_samples(space: FockSpace, count: int, seed: int, max_weight=3, mode_range=3) -> list:
    rng = random.Random(seed)
    basis = space.basis(None, max_weight)
    return [({rng.choice(basis): 1}, {rng.choice(basis): 1}, rng.randint(-mode_range, mode_range))
            for _ in range(count)]


def _fmt(space: FockSpace, d) -> str:
    return space.format(_vec(dict(d)))


# ------------------------------------------------------------------ suites


def axioms_suite(space: FockSpace, cutoff=2, seed=0, samples=200) -> list[dict]:
    voa = LatticeVOA(space)
    checks = []
    bad = None
    triples = random_triple_samples(space, samples, seed, cutoff)
    for a, b, c, m, n, k in triples:
        lhs, rhs = voa.borcherds_sides(a, b, c, m, n, k)
        if lhs != rhs:
            bad = f"a={_fmt(space, a)} b={_fmt(space, b)} c={_fmt(space, c)} (m,n,k)=({m},{n},{k})"
            break
    checks.append(check("borcherds", bad is None, bad or f"{len(triples)} triples"))

    pairs = random_pair_samples(space, samples // 2, seed + 1, cutoff)
    bad = next((f"a={_fmt(space, a)} b={_fmt(space, b)} n={n}" for a, b, n in pairs
                if not voa.skew_symmetry_check(a, b, n)), None)
    checks.append(check("skew-symmetry", bad is None, bad or f"{len(pairs)} pairs"))

    pairs = random_pair_samples(space, samples, seed + 2, cutoff)
    bad = None
    for a, b, n in pairs:
        la = voa._virasoro_dict(-1, a)
        if voa.state_mode(la, n, b) != voa.state_mode(a, n - 1, b) * (-n):
            bad = f"a={_fmt(space, a)} b={_fmt(space, b)} n={n}"
            break
    checks.append(check("L(-1)-derivative", bad is None, bad or f"{len(pairs)} pairs"))

    bad = None
    for a, b, n in pairs:
        (at,), (bt,) = a, b
        res = voa.mode_dict(a, n, b)
        want_w = space.weight(at) + space.weight(bt) - n - 1
        want_c = at.charge + bt.charge
        for t in res:
            if space.weight(t) != want_w or t.charge != want_c:
                bad = f"a={_fmt(space, a)} b={_fmt(space, b)} n={n}"
        if bad:
            break
    checks.append(check("weight-charge-conservation", bad is None, bad or f"{len(pairs)} pairs"))
    return checks


def o_vanishing_vb_suite(space: FockSpace, cutoff=4, seed=0) -> list[dict]:
    N = rank_one_N(space)
    red = zhu.get_reducer("VB", N)
    rep = zhu.verify_O_vanishing(red, cutoff, 2)
    fail = rep["failures"][0] if rep["failures"] else None
    witness = (f"{red.space.format_term(fail[0])} o {red.space.format_term(fail[1])} -> {fail[2]}"
               if fail else f"{rep['pairs']} pairs, basis {rep['basis_size']}")
    return [check(f"O-vanishing VB N={N} wt<={cutoff}", not rep["failures"], witness)]


def o_vanishing_vp_suite(space: FockSpace, cutoff=3, seed=0) -> list[dict]:
    require_a2(space)
    red = zhu.get_reducer("VP")
    rep = zhu.verify_O_vanishing(red, cutoff)
    fail = rep["failures"][0] if rep["failures"] else None
    witness = (f"{red.space.format_term(fail[0])} o {red.space.format_term(fail[1])} -> {fail[2]}"
               if fail else f"{rep['pairs']} pairs, basis {rep['basis_size']}")
    return [check(f"O-vanishing VP wt<={cutoff}", not rep["failures"], witness)]


def zhu_presentations_suite(space: FockSpace, cutoff=3, seed=0, samples=100) -> list[dict]:
    require_a2(space)
    red = zhu.get_reducer("VP")
    checks = []
    for name, rel in azalg.RELATIONS:
        val = zhu.relation_in_voa(red, rel)
        checks.append(check(f"relation {name}", val.is_zero(), str(val)))
    for name, rel in azalg.DERIVED_RELATIONS:
        val = zhu.relation_in_voa(red, rel)
        checks.append(check(f"derived {name}", val.is_zero(), str(val)))
    gens = red.generator_states()
    bad = [f"{g}*{h}" for g in gens for h in gens if not zhu.verify_homomorphism(red, gens[g], gens[h])]
    checks.append(check("homomorphism on 36 generator pairs", not bad, ", ".join(bad) or "36 pairs"))
    rng = random.Random(seed)
    basis = red.basis(cutoff)
    bad = None
    for _ in range(samples):
        a = zhu.random_state(red.space, basis, rng)
        b = zhu.random_state(red.space, basis, rng)
        if not zhu.verify_homomorphism(red, a, b):
            bad = f"a={red.space.format(a)} b={red.space.format(b)}"
            break
    checks.append(check(f"homomorphism on {samples} random pairs", bad is None, bad or f"seed {seed}"))
    return checks


def modules_suite(space: FockSpace | None = None, cutoff=None, seed=0, samples=100) -> list[dict]:
    if space is not None:
        require_a2(space)
    checks = []
    for q in (Fraction(0), Fraction(1, 3), Fraction(-2)):
        for eps in ("0", "half"):
            spec = modvoa.PModuleSpec(eps, q)
            mod = modvoa.get_module(spec)
            mats = mod.bottom_matrices()
            ok = mats == mod.expected_bottom_matrices()
            checks.append(check(f"bottom action eps={eps} (l|b)={q}", ok, _mat_witness(mats)))
            checks.append(check(f"A_P relations on bottom eps={eps} (l|b)={q}",
                                modvoa.ap_module_relation_check(mats), f"{len(mats['x'])}x{len(mats['x'])}"))
    for eps, levels in (("0", 3), ("half", 2)):
        mod = modvoa.get_module(modvoa.PModuleSpec(eps, Fraction(1, 3)))
        dims = mod.spanning_dims(levels)
        checks.append(check(f"spanning eps={eps} levels={levels}", all(a == b for a, b in dims),
                            [list(d) for d in dims]))
        bad = None
        for at, n, wt in modvoa.random_module_samples(mod, samples, seed):
            for t in mod.mode({at: 1}, n, {wt: 1}):
                if mod.lm0(t) != mod.vp_space.weight(at) + mod.lm0(wt) - n - 1:
                    bad = f"{mod.vp_space.format_term(at)} n={n} on {mod.space.format_term(wt)}"
        checks.append(check(f"module weight conservation eps={eps}", bad is None, bad or f"{samples} samples"))
    mod = modvoa.get_module(modvoa.PModuleSpec("half", Fraction(1, 3)))
    bw = mod.bottom_weight()
    checks.append(check("bottom weight of L^(alpha/2,lambda) is (l|l)/2 + 1/4", bw == Fraction(1, 4),
                        "(l|l)/2 + 1/4 from L(0) on e^{+-a/2 + l}"))
    return checks


def _mat_witness(mats: dict) -> dict:
    return {g: [[str(x) for x in row] for row in m] for g, m in mats.items()}


def bilform_suite(space: FockSpace, cutoff=2, seed=0, samples=200) -> list[dict]:
    voa = LatticeVOA(space)
    ctx = bilform.context_for(voa, 2 * cutoff + 2)
    kappas = {",".join(str(x) for x in k): str(v) for k, v in sorted(ctx.base_pairings.items())}
    checks = [check("calibration", True, kappas)]
    triples = bilform.random_triples(space, samples, seed, cutoff)
    bad, nonzero = None, 0
    for a, b, c, n in triples:
        lhs, rhs = bilform.invariance_sides(voa, ctx, a, b, c, n)
        nonzero += lhs != 0
        if lhs != rhs:
            bad = f"a={space.format(a)} b={space.format(b)} c={space.format(c)} n={n}: {lhs} vs {rhs}"
            break
    checks.append(check("invariance", bad is None, bad or f"{len(triples)} triples, {nonzero} nonzero"))
    basis = space.basis(None, cutoff)
    bad_sym = bad_charge = bad_grade = None
    for s in basis:
        for t in basis:
            v = bilform.form(ctx, {s: 1}, {t: 1})
            if v != bilform.form(ctx, {t: 1}, {s: 1}):
                bad_sym = (space.format_term(s), space.format_term(t))
            if v and (s.charge + t.charge).coords != space.zero_charge().coords:
                bad_charge = (space.format_term(s), space.format_term(t))
            if v and space.weight(s) != space.weight(t):
                bad_grade = (space.format_term(s), space.format_term(t))
    checks.append(check("symmetry", bad_sym is None, bad_sym or f"{len(basis)}^2 pairs"))
    checks.append(check("charge orthogonality", bad_charge is None, bad_charge or ""))
    checks.append(check("graded orthogonality", bad_grade is None, bad_grade or ""))
    return checks


def quasi_triangular_suite(space: FockSpace, cutoff=None, seed=0) -> list[dict]:
    voa = LatticeVOA(space)
    if space.rank == 1:
        runs = [(bilform.rank_one_split(), cutoff or 3, None)]
    else:
        require_a2(space)
        runs = [(bilform.a2_borel_split(), cutoff or 2, None),
                (bilform.a2_parabolic_split(), cutoff or 2, parabolic_a2())]
    checks = []
    for spec, cut, par in runs:
        ctx = bilform.context_for(voa, 2 * cut + 2)
        rep = bilform.quasi_triangular_check(voa, spec, ctx, cut, 3, par)
        for name, viol in rep.items():
            if name == "P-is-plus-and-H" and par is None:
                continue
            checks.append(check(f"{spec.name}: {name}", not viol, [str(v) for v in viol[:3]]))
    return checks


def strong_generation_suite(space: FockSpace, cutoff=None, seed=0) -> list[dict]:
    voa = LatticeVOA(space)
    if space.rank == 1:
        M, cut = borel_rank_one(), cutoff or 3
        U = [space.vacuum(), space.state([(0, 1)]), space.exp(1)]
        label = f"V_B N={rank_one_N(space)}"
    else:
        require_a2(space)
        M, cut = parabolic_a2(), cutoff or 2
        U = [space.exp(1, 0), space.exp(-1, 0), space.exp(0, 1), space.exp(1, 1),
             space.state([(0, 1)]), space.state([(1, 1)])]
        label = "V_P"
    rep = voa.strong_generation_report(U, M, cut)
    ok = all(a == b for a, b in rep.values())
    return [check(f"strong generation {label} wt<={cut}", ok,
                  {str(w): [a, b] for w, (a, b) in sorted(rep.items())})]


def normalizer_suite(space: FockSpace, cutoff=3, seed=0, samples=20) -> list[dict]:
    require_a2(space)
    voa = LatticeVOA(space)
    P = parabolic_a2()
    rng = random.Random(seed)
    basis = space.basis(P, 2)
    checks = []
    bad = None
    for _ in range(samples):
        a = _vec({rng.choice(basis): 1})
        w = voa.normalizer_witness(P, a, 4, cutoff)
        if w is not None:
            bad = f"{space.format(a)}: mode {w[0]} on {space.format_term(w[1])}"
            break
    checks.append(check(f"normalizer holds for {samples} states of V_P", bad is None, bad or f"seed {seed}"))
    for coords, label in (((0, -1), "e^-b"), ((-1, -1), "e^-a-b"), ((1, -1), "e^a-b")):
        w = voa.normalizer_witness(P, space.exp(*coords), 4, cutoff)
        checks.append(check(f"normalizer fails for {label}", w is not None,
                            f"mode {w[0]} on {space.format_term(w[1])}" if w else "no witness"))
    return checks


def o_vanishing_suite(space: FockSpace, cutoff=None, seed=0) -> list[dict]:
    """O-vanishing for V_B on rank-one configs, for V_P on A2."""
    kwargs = {} if cutoff is None else {"cutoff": cutoff}
    if space.rank == 1:
        return o_vanishing_vb_suite(space, seed=seed, **kwargs)
    return o_vanishing_vp_suite(space, seed=seed, **kwargs)


def homomorphism_suite(space: FockSpace, cutoff=3, seed=0, samples=100) -> list[dict]:
    """reduce(a*b) = reduce(a)reduce(b) on generators and seeded random pairs."""
    red = zhu.get_reducer("VB", rank_one_N(space)) if space.rank == 1 else zhu.get_reducer("VP")
    if space.rank != 1:
        require_a2(space)
    gens = red.generator_states()
    bad = [f"{g}*{h}" for g in gens for h in gens if not zhu.verify_homomorphism(red, gens[g], gens[h])]
    pairs = len(gens) ** 2
    checks = [check(f"homomorphism on {pairs} generator pairs", not bad, ", ".join(bad) or f"{pairs} pairs")]
    rng = random.Random(seed)
    basis = red.basis(cutoff, 2)
    bad = None
    for _ in range(samples):
        a = zhu.random_state(red.space, basis, rng)
        b = zhu.random_state(red.space, basis, rng)
        if not zhu.verify_homomorphism(red, a, b):
            bad = f"a={red.space.format(a)} b={red.space.format(b)}"
            break
    checks.append(check(f"homomorphism on {samples} random pairs", bad is None, bad or f"seed {seed}"))
    return checks


SUITES: dict[str, Callable] = {
    "o-vanishing": o_vanishing_suite,
    "homomorphism": homomorphism_suite,
    "axioms": axioms_suite,
    "o-vanishing-vb": o_vanishing_vb_suite,
    "o-vanishing-vp": o_vanishing_vp_suite,
    "zhu-presentations": zhu_presentations_suite,
    "modules": modules_suite,
    "bilform": bilform_suite,
    "quasi-triangular": quasi_triangular_suite,
    "strong-generation": strong_generation_suite,
    "normalizer": normalizer_suite,
}


def run_suite(name: str, space: FockSpace, cutoff=None, seed: int = 0) -> list[dict]:
    if name not in SUITES:
        raise VOAError("UNKNOWN_SUITE", f"unknown suite {name!r}")
    kwargs = {"seed": seed}
    if cutoff is not None:
        kwargs["cutoff"] = cutoff
    return SUITES[name](space, **kwargs)
