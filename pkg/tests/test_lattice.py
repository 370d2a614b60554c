from fractions import Fraction

import pytest

from latvoa.errors import VOAError
from latvoa.lattice import (
    UNDECIDED,
    Cocycle,
    Generated,
    Isometry,
    Lattice,
    a2,
    a2_cocycle,
    borel_rank_one,
    classify_borel,
    classify_parabolic,
    cocycle_validate,
    isometry_validate,
    p1_a2,
    parabolic_a2,
    rank_one,
    simple_reflection,
    strictly_positive_a2,
    submonoid_contains,
    trivial_cocycle,
)


def test_a2_pairing_and_norms():
    L = a2()
    assert L.pairing((1, 0), (0, 1)) == -1
    assert L.norm((1, 1)) == 2
    assert L.norm((1, -1)) == 6


def test_rank_one_norm():
    for N in (1, 2, 3):
        assert rank_one(N).norm((1,)) == 2 * N


def test_lattice_rejects_non_even():
    with pytest.raises(VOAError):
        Lattice(((1,),), ("a",))


def test_dual_basis_pairs_to_identity():
    L = a2()
    dual = L.dual_basis()
    for i, d in enumerate(dual):
        for j in range(2):
            unit = tuple(1 if k == j else 0 for k in range(2))
            assert L.pairing(d, unit) == (1 if i == j else 0)


def test_cocycle_commutator_on_a2_root_vectors():
    L, eps = a2(), a2_cocycle()
    assert cocycle_validate(eps, L)
    vecs = [(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    for u in vecs:
        for v in vecs:
            sign = eps.eval(u, v) * eps.eval(v, u)
            assert sign == (-1) ** int(L.pairing(u, v))


def test_trivial_cocycle_fails_on_a2():
    assert not cocycle_validate(trivial_cocycle(2), a2())


def test_cocycle_rejects_bad_entries():
    with pytest.raises(VOAError):
        Cocycle(((2,),))


def test_parabolic_membership():
    P = parabolic_a2()
    assert submonoid_contains(P, (-5, 0))
    assert submonoid_contains(P, (3, 2))
    assert not submonoid_contains(P, (0, -1))
    assert not submonoid_contains(P, (Fraction(1, 2), 0))


def test_strictly_positive_and_union():
    I = strictly_positive_a2()
    assert not submonoid_contains(I, (1, 0))
    assert submonoid_contains(I, (-4, 1))
    P1 = p1_a2()
    assert submonoid_contains(P1, (2, 0))
    assert not submonoid_contains(P1, (-1, 0))
    assert submonoid_contains(P1, (-1, 1))


def test_generated_membership_and_undecided():
    G = Generated(((1, 0), (0, 1)), 10)
    assert submonoid_contains(G, (2, 3)) is True
    assert submonoid_contains(G, (-1, 0)) is False
    tight = Generated(((1, 0), (-1, 1), (0, 1)), 1)
    assert submonoid_contains(tight, (0, 5)) is UNDECIDED


def test_borel_and_parabolic_classification():
    assert classify_borel(borel_rank_one())
    assert classify_borel(Generated(((1, 0), (1, 1)), 5))
    assert not classify_borel(Generated(((2, 0), (0, 1)), 5))
    assert classify_parabolic(parabolic_a2(), ((1, 0), (0, 1))) is True
    assert classify_parabolic(parabolic_a2(), ((1, 0), (0, -1))) is False


def test_simple_reflection_is_isometry():
    L = a2()
    for i in range(2):
        s = simple_reflection(L, i)
        assert isometry_validate(s, L)
    s0 = simple_reflection(L, 0)
    assert s0.apply((1, 0)) == (-1, 0)
    assert s0.apply((0, 1)) == (1, 1)


def test_non_isometry_rejected():
    assert not isometry_validate(Isometry(((1, 1), (0, 1))), a2())
