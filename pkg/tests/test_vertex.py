from fractions import Fraction

import pytest

from latvoa.fock import FockSpace
from latvoa.lattice import a2, a2_cocycle, rank_one
from latvoa.vertex import LatticeVOA, gbinom


@pytest.fixture(scope="module")
def va2():
    return LatticeVOA(FockSpace(a2(), a2_cocycle()))


def test_gbinom_negative_upper():
    assert gbinom(-1, 3) == -1
    assert gbinom(-2, 2) == 3
    assert gbinom(5, 2) == 10
    assert gbinom(2, 5) == 0
    assert gbinom(3, -1) == 0


@pytest.mark.parametrize("N", [1, 2, 3])
def test_exp_mode_table(N):
    voa = LatticeVOA(FockSpace(rank_one(N)))
    sp = voa.space
    e = sp.exp(1)
    for n in range(-2 * N, 2 * N + 1):
        assert voa.state_mode(e, n, e) == 0
    assert voa.state_mode(e, -2 * N - 1, e) == sp.exp(2)


def test_e_alpha_minus_one_on_e_minus_alpha():
    voa = LatticeVOA(FockSpace(rank_one(1)))
    sp = voa.space
    got = voa.state_mode(sp.exp(1), -1, sp.exp(-1))
    want = sp.state([(0, 1), (0, 1)]) * Fraction(1, 2) + sp.state([(0, 2)]) * Fraction(1, 2)
    assert got == want


def test_vacuum_is_identity_and_creation(va2):
    sp = va2.space
    v = sp.state([(0, 2), (1, 1)], 1, 1)
    assert va2.state_mode(sp.vacuum(), -1, v) == v
    assert va2.state_mode(v, -1, sp.vacuum()) == v
    assert va2.state_mode(v, 0, sp.vacuum()) == 0


def test_heisenberg_field_modes(va2):
    # (h(-1)vac)_n acts as h(n)
    sp = va2.space
    v = sp.state([(1, 2)], 1, 0)
    for n in (-2, -1, 0, 1, 2):
        assert va2.state_mode(sp.state([(0, 1)]), n, v) == sp.heisenberg_act((1, 0), n, v)


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("k", [-3, -1, 0, 2])
def test_heisenberg_exp_commutator(va2, m, k):
    # [h(-m), (e^g)_k] = (h|g) (e^g)_{k-m}
    sp = va2.space
    gamma = (1, 1)
    h = (0, 1)
    hg = sp.lattice.pairing(h, gamma)
    for v in (sp.exp(-1, 0), sp.state([(0, 1)], 0, -1)):
        e = sp.exp(*gamma)
        lhs = sp.heisenberg_act(h, -m, va2.state_mode(e, k, v)) - va2.state_mode(e, k, sp.heisenberg_act(h, -m, v))
        assert lhs == va2.state_mode(e, k - m, v) * hg


def test_virasoro_bracket_central_charge(va2):
    sp = va2.space
    states = [sp.vacuum(), sp.exp(1, 0), sp.state([(0, 1), (1, 2)], 0, 1)]
    for v in states:
        for m in range(-2, 3):
            for n in range(-2, 3):
                lhs = va2.virasoro_mode(m, va2.virasoro_mode(n, v)) - va2.virasoro_mode(n, va2.virasoro_mode(m, v))
                rhs = va2.virasoro_mode(m + n, v) * (m - n)
                if m + n == 0:
                    rhs = rhs + v * Fraction(2 * (m ** 3 - m), 12)
                assert lhs == rhs


def test_l0_is_weight(va2):
    sp = va2.space
    v = sp.state([(0, 1), (1, 3)], 1, -1)
    t = next(iter(v.terms))
    assert va2.virasoro_mode(0, v) == v * sp.weight(t)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_l_minus_one_heisenberg_bracket(va2, k):
    # [L(-1), h(-k)] = k h(-k-1)
    sp = va2.space
    h = (1, 0)
    for v in (sp.vacuum(), sp.exp(0, 1), sp.state([(1, 1)], 1, 0)):
        lhs = va2.virasoro_mode(-1, sp.heisenberg_act(h, -k, v)) - sp.heisenberg_act(h, -k, va2.virasoro_mode(-1, v))
        assert lhs == sp.heisenberg_act(h, -k - 1, v) * k


def test_l_minus_one_on_exp():
    voa = LatticeVOA(FockSpace(rank_one(1)))
    sp = voa.space
    assert voa.virasoro_mode(-1, sp.exp(1)) == sp.state([(0, 1)], 1)
    assert voa.virasoro_mode(1, sp.state([(0, 1)])) == 0


def test_omega_modes_are_virasoro(va2):
    sp = va2.space
    v = sp.state([(0, 1)], 0, 1)
    for n in (-1, 0, 1, 2):
        assert va2.state_mode(va2.omega(), n + 1, v) == va2.virasoro_mode(n, v)


def test_borcherds_and_skew_fixed_cases(va2):
    sp = va2.space
    a, b, c = sp.exp(1, 0), sp.exp(0, 1), sp.state([(0, 1)], -1, -1)
    for m, n, k in [(0, 0, 0), (-1, 1, -2), (2, -3, 1)]:
        assert va2.borcherds_check(a, b, c, m, n, k)
    for n in range(-3, 3):
        assert va2.skew_symmetry_check(a, c, n)


def test_a2_cocycle_sign_in_mode(va2):
    sp = va2.space
    got = va2.state_mode(sp.exp(0, 1), -1, sp.exp(1, 0))
    assert got == sp.state([(1, 1)], 1, 1) * -1
    assert va2.state_mode(sp.state([(0, 1)]), 0, sp.exp(0, 1)) == sp.exp(0, 1) * -1


def test_weighted_residue_matches_definition():
    voa = LatticeVOA(FockSpace(rank_one(1)))
    sp = voa.space
    a, b = sp.exp(1), sp.vacuum()
    # Res Y(a,z)b (1+z)^1 / z^2 = a_{-2}b + a_{-1}b
    want = voa.state_mode(a, -2, b) + voa.state_mode(a, -1, b)
    assert voa.weighted_residue(a, b, 1, 2) == want
