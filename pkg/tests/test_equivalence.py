import pytest

from twistact.equivalence import (NotSameAction, check_global_equivalence, transport_globalization,
                                  try_equivalent, try_isomorphic)
from twistact.fixtures import (fix_a, fix_b, fix_c, fix_c_alt_twist, fix_d, fix_e,
                               shift_ambient)
from twistact.globalization import globalize, package_global


def test_self_isomorphic(fixture_name, glob_of):
    g = glob_of(fixture_name)
    iso = try_isomorphic(g, g)
    assert iso, iso.report.failures()
    for b in g.B_basis():
        assert iso.apply(b) == b
    eq = try_equivalent(g, g)
    assert eq and all(e == g.one_B for e in eq.epsilon)


def test_fix_a_vs_ambient():
    a = fix_a()
    g1, g2 = globalize(a), package_global(shift_ambient(), {0, 1})
    assert try_isomorphic(g1, g2)
    assert try_equivalent(g1, g2)


def test_fix_b_coboundary_variant():
    b = fix_b()
    g1 = globalize(b)
    g2 = transport_globalization(g1, [b.ring.one(), b.ring.scalars([3])])
    assert g2.action.w[(1, 1)] == b.ring.scalars([3])
    iso = try_isomorphic(g1, g2)
    assert not iso and iso.stage == "sametildew" and iso.witness == {"x": 1, "y": 1}
    eq = try_equivalent(g1, g2)
    assert eq, eq.report.failures()
    assert try_equivalent(g2, g1)


def test_fix_c_two_twists():
    c = fix_c()
    g1, g2 = globalize(c), globalize(c, wt=fix_c_alt_twist())
    iso = try_isomorphic(g1, g2)
    assert not iso and iso.witness == {"x": 1, "y": 1}
    eq = try_equivalent(g1, g2)
    assert eq, eq.report.failures()
    assert check_global_equivalence(g1, g2, eq.iso, eq.epsilon).passed
    assert try_equivalent(g2, g1)


def test_fix_d_other_base_block():
    d = fix_d()
    g1 = globalize(d)
    g2 = globalize(d, base_blocks={0: 1}, reps={0: (0, 4, 5)})
    assert try_isomorphic(g1, g2)
    assert try_equivalent(g1, g2)


def test_wrong_epsilon_is_rejected():
    c = fix_c()
    g1, g2 = globalize(c), globalize(c, wt=fix_c_alt_twist())
    eq = try_equivalent(g1, g2)
    wrong = tuple(g2.one_B for _ in eq.epsilon)
    rep = check_global_equivalence(g1, g2, eq.iso, wrong)
    assert not rep["w2"].passed


def test_different_actions_rejected():
    with pytest.raises(NotSameAction):
        try_isomorphic(globalize(fix_b()), globalize(fix_e()))
