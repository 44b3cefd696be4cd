from twistact.fixtures import fix_a, fixture
from twistact.globalization import globalize
from twistact.morita import build_context, verify_surjectivity

SIZES = {"FIX-A": (16, 512), "FIX-B": (25, 25), "FIX-C": (125, 15625), "FIX-E": (6561, 6561)}


def test_pairings_onto(fixture_name, glob_of):
    t = fixture(fixture_name)
    rep = verify_surjectivity(build_context(t, glob_of(fixture_name)))
    assert rep.passed, rep.failures()
    if fixture_name in SIZES:
        assert (rep.data["|R|"], rep.data["|R'|"]) == SIZES[fixture_name]


def test_truncated_n_fails():
    a = fix_a()
    ctx = build_context(a, globalize(a), check=False, n_elements=[0])
    rep = verify_surjectivity(ctx)
    assert not rep["tau-prime"].passed
    assert rep["tau-prime"].witness["missing"] is not None
