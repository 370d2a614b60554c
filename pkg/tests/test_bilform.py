import pytest

from latvoa.bilform import (
    DecompositionSpec,
    FormContext,
    context_for,
    form,
    gram_rank,
    invariance_check,
    rank_one_split,
    a2_borel_split,
    a2_parabolic_split,
    quasi_triangular_check,
    quasi_triangular_ok,
    random_triples,
)
from latvoa.errors import VOAError
from latvoa.fock import FockSpace
from latvoa.lattice import a2, a2_cocycle, parabolic_a2, rank_one
from latvoa.vertex import LatticeVOA


@pytest.fixture(scope="module")
def va2():
    return LatticeVOA(FockSpace(a2(), a2_cocycle()))


def test_heisenberg_form_values():
    voa = LatticeVOA(FockSpace(rank_one(1)))
    sp = voa.space
    ctx = context_for(voa, 2)
    h1 = sp.state([(0, 1)])
    assert form(ctx, h1, h1) == -2
    # (a(-2)vac | a(-2)vac) = -(vac | a(2)a(-2)vac) = -2 * 2
    assert form(ctx, sp.state([(0, 2)]), sp.state([(0, 2)])) == -4
    assert form(ctx, h1, sp.state([(0, 2)])) == 0


def test_kappa_formula(va2):
    ctx = context_for(va2, 3)
    sp = va2.space
    for coords, kappa in ctx.base_pairings.items():
        g = sp.charge(*coords)
        sign = sp.cocycle.eval(tuple(-c for c in coords), coords)
        assert kappa == (-1) ** int(sp.charge_norm(g) / 2) * sign


def test_missing_pairing():
    sp = FockSpace(rank_one(1))
    ctx = FormContext(sp)
    with pytest.raises(VOAError) as exc:
        form(ctx, sp.exp(1), sp.exp(-1))
    assert exc.value.code == "MISSING_BASE_PAIRING"


def test_form_is_symmetric_and_charge_orthogonal(va2):
    sp = va2.space
    ctx = context_for(va2, 4)
    basis = sp.basis(None, 2)
    for s in basis:
        for t in basis:
            v = form(ctx, {s: 1}, {t: 1})
            assert v == form(ctx, {t: 1}, {s: 1})
            if v:
                assert all(a + b == 0 for a, b in zip(s.charge.coords, t.charge.coords))


def test_invariance_samples_rank_one():
    voa = LatticeVOA(FockSpace(rank_one(2)))
    ctx = context_for(voa, 6)
    for a, b, c, n in random_triples(voa.space, 40, 9):
        assert invariance_check(voa, ctx, a, b, c, n)


def test_invariance_samples_a2(va2):
    ctx = context_for(va2, 6)
    for a, b, c, n in random_triples(va2.space, 40, 4):
        assert invariance_check(va2, ctx, a, b, c, n)


def test_form_nondegenerate_on_low_weights(va2):
    ctx = context_for(va2, 4)
    sp = va2.space
    for w in (0, 1, 2):
        terms = [t for t in sp.basis(None, 2) if sp.weight(t) == w]
        assert gram_rank(ctx, terms) == len(terms)


def test_splits_partition_lattice():
    for spec in (a2_borel_split(), a2_parabolic_split()):
        for a in range(-3, 4):
            for b in range(-3, 4):
                spec.part_of((a, b))
    assert rank_one_split().part_of((2,)) == "+"


def test_quasi_triangular_rank_one():
    voa = LatticeVOA(FockSpace(rank_one(1)))
    ctx = context_for(voa, 6)
    assert quasi_triangular_ok(quasi_triangular_check(voa, rank_one_split(), ctx, 2, 2))


def test_quasi_triangular_parabolic(va2):
    ctx = context_for(va2, 6)
    rep = quasi_triangular_check(va2, a2_parabolic_split(), ctx, 2, 2, parabolic_a2())
    assert quasi_triangular_ok(rep)


def test_quasi_triangular_detects_bad_split():
    # both e^a and e^-a in the plus part: (e^a|e^-a) != 0 breaks isotropy
    voa = LatticeVOA(FockSpace(rank_one(1)))
    bad = DecompositionSpec("bad", lambda c: c[0] != 0, lambda c: c[0] == 0, lambda c: False)
    ctx = context_for(voa, 6)
    rep = quasi_triangular_check(voa, bad, ctx, 2, 1)
    assert rep["isotropy"]
    assert not quasi_triangular_ok(rep)
