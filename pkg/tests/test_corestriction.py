import pytest

from twistact.action import verify_axioms
from twistact.corestriction import (DomainMismatch, InvalidWitness, apply_epsilon,
                                    check_equivalent, corestrict, identity_witness, make_witness)
from twistact.fixtures import S_MATRIX, fix_a, fix_b, fix_c, fix_e, fixture


def test_corestrict_passes(fixture_name):
    res = corestrict(fixture(fixture_name))
    assert res.report.passed, res.report.failures()
    assert verify_axioms(res.action).passed


def test_corestriction_is_equivalent_to_input():
    c = fix_c()
    res = corestrict(c)
    assert check_equivalent(c, res.action, res.witness).passed


def test_reflexive_symmetric_transitive():
    b = fix_b()
    assert check_equivalent(b, b, identity_witness(b)).passed
    eps1 = make_witness(b, [b.ring.one(), b.ring.scalars([3])])
    b1 = apply_epsilon(b, eps1)
    assert b1.w[(1, 1)] == b.ring.scalars([3])
    assert check_equivalent(b1, b, eps1.inverse(b)).passed
    eps2 = make_witness(b1, [b.ring.one(), b.ring.scalars([2])])
    b2 = apply_epsilon(b1, eps2)
    assert check_equivalent(b, b2, eps1.compose(eps2)).passed


def test_noncommutative_witness():
    e = fix_e()
    eps = make_witness(e, [e.ring.one(), e.ring.element([S_MATRIX])])
    e2 = apply_epsilon(e, eps)
    assert verify_axioms(e2).passed
    assert e2.alpha[1].isos[0].conjugator == ((2, 0), (0, 2))
    assert e2.w[(1, 1)] == e.ring.one()


def test_wrong_witness_is_caught():
    b = fix_b()
    other = b.with_twist((1, 1), b.ring.scalars([3]))
    rep = check_equivalent(b, other, identity_witness(b))
    assert not rep["w"].passed
    assert rep["w"].witness["x"] == 1 and rep["w"].witness["y"] == 1


def test_bad_witness_and_domain_errors():
    a = fix_a()
    with pytest.raises(InvalidWitness):
        make_witness(a, [a.ring.one(), a.ring.zero(), a.one(2)])
    with pytest.raises(DomainMismatch):
        check_equivalent(a, a.copy(D=(a.D[0], a.D[2], a.D[1])), identity_witness(a))
