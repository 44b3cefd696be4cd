import dataclasses

import pytest

from twistact.fixtures import fix_a, fix_c, fix_d, fixture
from twistact.orbits import (NotTransitiveOnOrbit, build_transitive_structure, decompose_orbits,
                             is_transitive, orbit_report, structures, theta, verify_bar_lemma,
                             verify_theta_lemmas)


def test_orbit_report_passes(fixture_name):
    rep = orbit_report(fixture(fixture_name))
    assert rep.passed, rep.failures()


def test_fix_a_structure():
    ts = build_transitive_structure(fix_a())
    assert ts.H.sorted() == [0]
    assert list(ts.reps) == [0, 1, 2]
    assert ts.lam == (0, 1)
    assert ts.block_of == {0: 0, 1: 1}


def test_fix_c_orbits():
    c = fix_c()
    assert not is_transitive(c)
    sts = structures(c)
    assert [ts.H.sorted() for ts in sts] == [[0, 1], [0]]
    assert sts[1].lam == (0,) and list(sts[1].reps) == [0, 1]


def test_fix_d_stabilizer():
    sts = structures(fix_d())
    assert sts[0].H.sorted() == [0, 3]
    assert decompose_orbits(fix_d()).orbit_ideals[0] == frozenset({0, 1})


def test_theta_values_fix_a():
    a = fix_a()
    ts = build_transitive_structure(a)
    x = a.ring.scalars([0, 1])
    assert theta(ts, 2, x) == a.ring.scalars([1, 0])
    assert theta(ts, 0, x) == a.ring.scalars([0, 1])
    assert theta(ts, 1, x) == a.ring.one()


def test_bad_base_block():
    with pytest.raises(NotTransitiveOnOrbit):
        build_transitive_structure(fix_a(), base_block=7)


def test_swapped_block_of_breaks_theta_lemmas():
    ts = build_transitive_structure(fix_a())
    bad = dataclasses.replace(ts, block_of={0: 1, 1: 0})
    rep = verify_bar_lemma(bad)
    rep.extend(verify_theta_lemmas(bad))
    assert not rep.passed
