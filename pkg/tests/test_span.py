from itertools import product

from hypothesis import given, settings, strategies as st

from twistact.span import ResidueSpan


def closure(moduli, gens):
    """Subgroup generated by gens, by breadth-first closure."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((x + y) % m for x, y, m in zip(v, g, moduli))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def test_diagonal_in_z2_squared():
    s = ResidueSpan((2, 2), [(1, 1)])
    assert s.size() == 2
    assert (0, 0) in s and (1, 1) in s and (1, 0) not in s


def test_mixed_moduli():
    s = ResidueSpan((4, 6), [(2, 3)])
    assert s.size() == 2
    s.add((1, 0))
    assert s.size() == 4 * 2


moduli_st = st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3)


@settings(max_examples=80, deadline=None)
@given(moduli_st, st.data())
def test_span_agrees_with_closure(moduli, data):
    vec = st.tuples(*(st.integers(0, m - 1) for m in moduli))
    gens = data.draw(st.lists(vec, max_size=3))
    s = ResidueSpan(moduli, gens)
    members = closure(moduli, gens)
    assert s.size() == len(members)
    for v in product(*(range(m) for m in moduli)):
        assert (v in s) == (v in members)


@settings(max_examples=60, deadline=None)
@given(moduli_st, st.data())
def test_sum_and_intersection(moduli, data):
    vec = st.tuples(*(st.integers(0, m - 1) for m in moduli))
    g1 = data.draw(st.lists(vec, max_size=2))
    g2 = data.draw(st.lists(vec, max_size=2))
    s1, s2 = ResidueSpan(moduli, g1), ResidueSpan(moduli, g2)
    c1, c2 = closure(moduli, g1), closure(moduli, g2)
    assert (s1 + s2).size() == len(closure(moduli, g1 + g2))
    assert s1.intersection_size(s2) == len(c1 & c2)
    assert s1.issubset(s1 + s2)
    assert (s1 == s2) == (c1 == c2)
