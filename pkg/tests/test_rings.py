import pytest
from hypothesis import given, settings, strategies as st

from twistact.rings import (BlockIso, BlockType, NotAUnit, ProductRing, brute_force_inverse,
                            extend_unit, is_prime, is_unit, mat_inverse, recover_conjugator,
                            try_invert)

M2F3 = ProductRing((BlockType(2, 3),))
MIXED = ProductRing((BlockType(1, 2, 2), BlockType(2, 2), BlockType(1, 5)))


def test_primality():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        BlockType(1, 6)


def test_sizes():
    assert MIXED.size() == 4 * 16 * 5
    assert M2F3.size() == 81
    assert len(M2F3.units()) == 48  # |GL_2(F_3)|


def test_spanning_set_generates_p_power_blocks():
    ring = ProductRing((BlockType(1, 2, 3),))
    gens = ring.spanning_set()
    assert [g.entries[0][0][0] for g in gens] == [1, 2, 4]


def test_inverse_matches_brute_force():
    for x in M2F3.elements():
        got = brute_force_inverse(x)
        if got is None:
            assert not is_unit(x)
        else:
            assert try_invert(x) == got


def test_non_unit_names_block():
    x = MIXED.scalars([2, 1, 1])
    with pytest.raises(NotAUnit) as exc:
        try_invert(x)
    assert exc.value.block == 0


def test_partial_unit_and_padding():
    w = MIXED.scalars([0, 1, 3])
    assert is_unit(w, {1, 2}) and not is_unit(w)
    assert is_unit(extend_unit(w, {1, 2}))


def test_block_iso_and_recovered_conjugator():
    t = ((1, 1), (0, 1))
    iso = BlockIso(0, 0, t)
    m = ((0, 1), (2, 0))
    img = iso.apply(m, 3)
    assert iso.inverse(3).apply(img, 3) == m
    u = recover_conjugator(lambda a: iso.apply(a, 3), 2, 3)
    assert all(BlockIso(0, 0, u).apply(a.entries[0], 3) == iso.apply(a.entries[0], 3)
               for a in M2F3.elements())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_ring_axioms_on_random_triples(seed):
    import random

    rng = random.Random(seed)
    a, b, c = (MIXED.random_element(rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * MIXED.one() == a == MIXED.one() * a
    assert MIXED.from_vector(a.vector()) == a


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_matrix_inverse_exact(vals):
    m = ((vals[0], vals[1]), (vals[2], vals[3]))
    inv = mat_inverse(m, 3)
    det = (vals[0] * vals[3] - vals[1] * vals[2]) % 3
    assert (inv is None) == (det == 0)
