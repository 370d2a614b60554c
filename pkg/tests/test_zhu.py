import random
from fractions import Fraction

import pytest

from latvoa.azalg import AP, VA1, VBAlgebra
from latvoa.errors import VOAError
from latvoa.fock import FockSpace
from latvoa.lattice import rank_one
from latvoa.vertex import LatticeVOA
from latvoa.zhu import (
    Reducer,
    ZhuReducer,
    circle,
    get_reducer,
    reduce_A1,
    reduce_B,
    reduce_P,
    star,
    verify_homomorphism,
    verify_O_vanishing,
    verify_vanishing_family,
    zhu_identity_checks,
)


def rank_one_voa(N):
    return LatticeVOA(FockSpace(rank_one(N)))


@pytest.mark.parametrize("N", [1, 2, 3])
def test_circle_with_vacuum(N):
    voa = rank_one_voa(N)
    sp = voa.space
    got = circle(voa, sp.exp(1), sp.vacuum())
    assert got == sp.state([(0, 1)], 1) + sp.exp(1) * N


@pytest.mark.parametrize("N", [1, 2, 3])
def test_star_identities(N):
    voa = rank_one_voa(N)
    sp = voa.space
    e, h = sp.exp(1), sp.state([(0, 1)])
    assert star(voa, e, e) == 0
    diff = star(voa, h, e) - star(voa, e, h)
    # equal to 2N e^a modulo O(V): the remainder is a multiple of e^a o vac
    assert diff - e * (2 * N) == circle(voa, e, sp.vacuum()) * (2 * N)
    assert reduce_B(diff, N) == reduce_B(e, N) * (2 * N)


def test_five_term_expansion_and_a1_reduction():
    voa = rank_one_voa(1)
    sp = voa.space
    got = circle(voa, sp.exp(1), sp.exp(-1))
    want = (
        sp.state([(0, 3)]) * Fraction(1, 3)
        + sp.state([(0, 2), (0, 1)]) * Fraction(1, 2)
        + sp.state([(0, 1)] * 3) * Fraction(1, 6)
        + sp.state([(0, 2)]) * Fraction(1, 2)
        + sp.state([(0, 1)] * 2) * Fraction(1, 2)
    )
    assert got == want
    assert reduce_A1(got).is_zero()


def test_reduce_b_values():
    sp = FockSpace(rank_one(1))
    assert str(reduce_B(sp.state([(0, 2)]), 1)) == "-x"
    sp2 = FockSpace(rank_one(2))
    B = VBAlgebra(2)
    # charge-alpha image picks up -N per Heisenberg factor
    assert reduce_B(sp2.state([(0, 1)], 1), 2) == B.gen("y") * -2
    assert reduce_B(sp2.state([(0, 1), (0, 1)]), 2) == B.gen("x") ** 2


def test_reduce_rejects_foreign_charge():
    sp = FockSpace(rank_one(1))
    with pytest.raises(VOAError) as exc:
        reduce_B(sp.exp(-1), 1)
    assert exc.value.code == "BAD_CHARGE"


def test_reduce_p_generators():
    red = get_reducer("VP")
    for name, state in red.generator_states().items():
        assert reduce_P(state) == AP.gen(name)


def test_va1_generators_and_homomorphism():
    red = get_reducer("VA1")
    gens = red.generator_states()
    for name, state in gens.items():
        assert red.reduce(state) == VA1.gen(name)
    for a in gens.values():
        for b in gens.values():
            assert verify_homomorphism(red, a, b)


@pytest.mark.parametrize("N", [1, 2])
def test_o_vanishing_small(N):
    rep = verify_O_vanishing(get_reducer("VB", N), 3, 1)
    assert rep["failures"] == []
    assert rep["pairs"] == rep["basis_size"] ** 2


def test_vanishing_family_and_zhu_identities():
    red = get_reducer("VB", 1)
    sp = red.space
    a, b = sp.exp(1), sp.state([(0, 2)])
    assert verify_vanishing_family(red, a, b, 2)
    rng = random.Random(5)
    basis = red.basis(3, 2)
    for _ in range(20):
        u = {rng.choice(basis): 1}
        v = {rng.choice(basis): 1}
        assert zhu_identity_checks(red, u, v)


def test_reducer_context_mismatch():
    with pytest.raises(VOAError) as exc:
        Reducer("VB", 2, FockSpace(rank_one(1)))
    assert exc.value.code == "CONTEXT_MISMATCH"
    with pytest.raises(VOAError):
        Reducer("VQ")


def test_zhu_reducer_fit_transform():
    sp = FockSpace(rank_one(1))
    model = ZhuReducer(target="vb", N=1)
    assert model.get_params() == {"target": "vb", "N": 1}
    with pytest.raises(VOAError):
        model.transform([sp.vacuum()])
    out = model.fit_transform([sp.state([(0, 2)]), sp.exp(1)])
    assert [str(o) for o in out] == ["-x", "y"]
    model.set_params(N=2)
    assert model.fit().reducer_.N == 2
    with pytest.raises(ValueError):
        model.set_params(alpha=1)
