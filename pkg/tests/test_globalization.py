import dataclasses

import pytest

from twistact.action import PartialIso, same_data, verify_axioms
from twistact.fixtures import (T_MATRIX, fix_a, fix_b, fix_c, fix_c_alt_twist, fix_e, fixture,
                               shift_ambient)
from twistact.globalization import (brute_force_extensions, build_extended_twist, globalize,
                                    package_global, restricted_action, roundtrip_report,
                                    unital_structure, verify_extended_cocycle, verify_globalization,
                                    verify_twolaws)

B_SIZES = {"FIX-A": 8, "FIX-B": 5, "FIX-C": 125, "FIX-D": 40, "FIX-E": 81}


def test_extended_twist(fixture_name):
    t = fixture(fixture_name)
    ext = build_extended_twist(t)
    assert verify_extended_cocycle(t, ext).passed
    assert verify_twolaws(t, ext).passed


def test_globalization_checks(fixture_name, glob_of):
    t, g = fixture(fixture_name), glob_of(fixture_name)
    rep = verify_globalization(t, g)
    assert rep.passed, rep.failures()
    assert g.size() == B_SIZES[fixture_name]
    assert unital_structure(g).passed
    assert roundtrip_report(t, g).passed


def test_fix_c_extension_oracle():
    c = fix_c()
    sols = brute_force_extensions(c)
    ext = build_extended_twist(c)
    assert ext.wt[(1, 1)] == c.ring.scalars([2, 1])
    assert any(s == ext.wt for s in sols)
    assert any(s == fix_c_alt_twist() for s in sols)
    assert verify_extended_cocycle(c, fix_c_alt_twist()).passed


def test_oracle_rejects_bad_twist():
    c = fix_c()
    ext = build_extended_twist(c)
    wt = dict(ext.wt)
    wt[(0, 1)] = c.ring.scalars([1, 2])
    rep = verify_extended_cocycle(c, wt)
    assert not rep["extend"].passed
    assert not any(s == wt for s in brute_force_extensions(c))


def test_twolaws_detect_mutations():
    e = fix_e()
    ext = build_extended_twist(e)
    wt = dict(ext.wt)
    wt[(1, 1)] = e.ring.element([T_MATRIX])
    assert not verify_twolaws(e, dataclasses.replace(ext, wt=wt))["composition"].passed
    c = fix_c()
    ext = build_extended_twist(c)
    wh = dict(ext.w_hat)
    wh[(1, 0)] = c.ring.scalars([2, 1])
    assert not verify_twolaws(c, dataclasses.replace(ext, w_hat=wh))["cocycle2"].passed


def test_fix_a_ambient_packaging():
    p = package_global(shift_ambient(), {0, 1})
    assert same_data(p.action, fix_a())
    assert verify_globalization(p.action, p).passed
    assert p.size() == 8


def test_roundtrip_recovers_action():
    c = fix_c()
    back = restricted_action(globalize(c))
    assert back.D == c.D and back.w == c.w
    assert verify_axioms(back).passed


def forged(g):
    """FIX-E's globalization with beta_g's first conjugator replaced by t."""
    al = g.beta.alpha[1]
    isos = (dataclasses.replace(al.isos[0], conjugator=T_MATRIX),) + al.isos[1:]
    beta = g.beta.with_alpha(1, PartialIso(al.domain, al.codomain, isos))
    return dataclasses.replace(g, beta=beta).finish()


def test_forged_beta_fails():
    e = fix_e()
    rep = verify_globalization(e, forged(globalize(e)))
    assert not rep.passed
    assert not rep["deltas"].passed


def test_roundtrip_detects_wrong_twist():
    b = fix_b()
    g = globalize(b)
    other = b.with_twist((1, 1), b.ring.scalars([3]))
    assert not roundtrip_report(other, g).passed


def test_globalize_rejects_invalid_action():
    from twistact.action import UnverifiedAction

    c = fix_c()
    with pytest.raises(UnverifiedAction):
        globalize(c.with_twist((1, 1), c.ring.zero()))
