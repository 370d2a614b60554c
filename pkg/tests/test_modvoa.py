from fractions import Fraction

import pytest

from latvoa.errors import VOAError
from latvoa.fock import colored_partition_count
from latvoa.modvoa import (
    PModuleSpec,
    VBModuleSpec,
    ap_module_relation_check,
    bottom_action_check,
    get_module,
    lm0,
    random_module_samples,
    spanning_check,
    vb_module_mode,
    zero_mode_matrix,
)

QS = [Fraction(0), Fraction(1, 3), Fraction(-2)]


def character_oracle(epsilon, levels):
    # level k above the bottom: sum over charges (n + s)a of p_2(k - shift of n)
    s = Fraction(1, 2) if epsilon == "half" else Fraction(0)
    base = min((n + s) ** 2 for n in range(-3, 4))
    out = []
    for k in range(levels):
        total = 0
        for n in range(-5, 6):
            d = (n + s) ** 2 - base
            if d <= k:
                total += colored_partition_count(int(k - d), 2)
        out.append(total)
    return out


@pytest.mark.parametrize("q", QS)
def test_bottom_action_untwisted(q):
    spec = PModuleSpec("0", q)
    assert bottom_action_check(spec)
    mod = get_module(spec)
    # y acts on e^lambda by (beta|lambda), everything else by zero
    assert zero_mode_matrix(mod.vp_space.state([(1, 1)]), 0, spec) == [[q]]
    assert zero_mode_matrix(mod.vp_space.exp(1, 0), 0, spec) == [[0]]


@pytest.mark.parametrize("q", QS)
def test_bottom_action_twisted(q):
    spec = PModuleSpec("half", q)
    assert bottom_action_check(spec)
    mod = get_module(spec)
    sp = mod.vp_space
    # basis (e^-, e^+) with charges -a/2 + l and a/2 + l
    assert zero_mode_matrix(sp.state([(0, 1)]), 0, spec) == [[-1, 0], [0, 1]]
    assert zero_mode_matrix(sp.state([(1, 1)]), 0, spec) == [[q + Fraction(1, 2), 0], [0, q - Fraction(1, 2)]]
    assert zero_mode_matrix(sp.exp(1, 0), 0, spec) == [[0, 0], [1, 0]]
    assert zero_mode_matrix(sp.exp(-1, 0), 0, spec) == [[0, 1], [0, 0]]


@pytest.mark.parametrize("eps", ["0", "half"])
def test_relations_on_bottom(eps):
    for q in QS:
        mats = get_module(PModuleSpec(eps, q)).bottom_matrices()
        assert ap_module_relation_check(mats)


def test_relation_check_detects_bad_matrices():
    bad = {g: [[Fraction(0)]] for g in ("x", "y", "xa", "xna", "xb", "xab")}
    bad["x"] = [[Fraction(2)]]
    assert not ap_module_relation_check(bad)


@pytest.mark.parametrize("eps,levels", [("0", 3), ("half", 2)])
def test_character_and_spanning(eps, levels):
    spec = PModuleSpec(eps, Fraction(1, 3))
    mod = get_module(spec)
    assert mod.character(levels) == character_oracle(eps, levels)
    assert spanning_check(spec, levels)


def test_bottom_weight_twisted():
    mod = get_module(PModuleSpec("half", Fraction(1, 3), Fraction(2)))
    assert mod.bottom_weight() == Fraction(1, 4) + 1
    for t in mod.bottom():
        assert lm0({t: 1}, mod.spec) == Fraction(5, 4)


def test_weight_conservation_on_samples():
    mod = get_module(PModuleSpec("half", Fraction(1, 3)))
    for at, n, wt in random_module_samples(mod, 50, 1):
        for t in mod.mode({at: 1}, n, {wt: 1}):
            assert mod.lm0(t) == mod.vp_space.weight(at) + mod.lm0(wt) - n - 1


def test_ideal_charges_act_by_zero():
    mod = get_module(PModuleSpec("0", Fraction(1, 3)))
    w = {mod.bottom()[0]: 1}
    assert mod.mode(mod.vp_space.exp(0, 1), -1, w) == 0
    with pytest.raises(VOAError) as exc:
        mod.mode(mod.vp_space.exp(0, -1), 0, w)
    assert exc.value.code == "BAD_CHARGE"


def test_bad_epsilon():
    with pytest.raises(VOAError):
        PModuleSpec("quarter", 0)


def test_vb_module_heisenberg_action():
    spec = VBModuleSpec(Fraction(3, 2))
    mod = get_module(spec)
    h = mod.space.state([(0, 1)])
    bottom = mod.bottom()
    assert vb_module_mode(h, 0, bottom, spec) == bottom * Fraction(3, 2)
    e = mod.space.exp(1)
    assert vb_module_mode(e, 0, bottom, spec) == 0
