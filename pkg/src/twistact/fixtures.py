"""Bundled example actions and single-mutation negatives.

FIX-A  C_3 on Z_2 x Z_2, untwisted, transitive and genuinely partial
FIX-B  C_2 on Z_5, global, twist w[g,g] = 2
FIX-C  C_2 on Z_5 x Z_5, D_g = block 0, twist w[g,g] = 2 there
FIX-D  FIX-A and FIX-B side by side, C_6 acting through its quotients
FIX-E  C_2 on M_2(F_3) by conjugation with s = [[0,1],[2,0]], twist 2I
"""

from __future__ import annotations

from .action import (PartialIso, TwistedPartialAction, direct_sum, inflate,
                     restrict, trivial_global)
from .groups import cyclic_group
from .rings import BlockType, ProductRing

S_MATRIX = ((0, 1), (2, 0))
T_MATRIX = ((1, 1), (0, 1))


def shift_ambient():
    """C_3 permuting the three blocks of Z_2^3 cyclically, no twist."""
    G = cyclic_group(3)
    ring = ProductRing((BlockType(1, 2),) * 3)
    perms = {g: {i: (i + g) % 3 for i in range(3)} for g in G.elements}
    return trivial_global(G, ring, perms, name="shift")


def fix_a():
    t = restrict(shift_ambient(), {0, 1})
    t.name = "FIX-A"
    return t


def fix_b():
    G = cyclic_group(2)
    ring = ProductRing((BlockType(1, 5),))
    return trivial_global(G, ring, twist={(1, 1): ring.scalars([2])}, name="FIX-B")


def swap_ambient():
    """C_2 on Z_5^3 swapping blocks 1 and 2, twist u[g,g] = (2,1,1)."""
    G = cyclic_group(2)
    ring = ProductRing((BlockType(1, 5),) * 3)
    perms = {0: {0: 0, 1: 1, 2: 2}, 1: {0: 0, 1: 2, 2: 1}}
    return trivial_global(G, ring, perms, twist={(1, 1): ring.scalars([2, 1, 1])}, name="swap")


def fix_c():
    G = cyclic_group(2)
    ring = ProductRing((BlockType(1, 5),) * 2)
    D = (ring.all_blocks, frozenset({0}))
    alpha = (PartialIso.identity(ring), PartialIso.identity(ring, {0}))
    one, g0 = ring.one(), ring.idempotent({0})
    w = {(0, 0): one, (0, 1): g0, (1, 0): g0, (1, 1): ring.scalars([2, 0])}
    return TwistedPartialAction(G, ring, D, alpha, w, name="FIX-C")


def fix_d():
    G = cyclic_group(6)
    a = inflate(fix_a(), G, [g % 3 for g in G.elements])
    b = inflate(fix_b(), G, [g % 2 for g in G.elements])
    return direct_sum(a, b, name="FIX-D")


def fix_e():
    G = cyclic_group(2)
    ring = ProductRing((BlockType(2, 3),))
    alpha = (PartialIso.identity(ring), PartialIso.build(ring, {0: 0}, {0: S_MATRIX}))
    t = trivial_global(G, ring, twist={(1, 1): ring.scalars([2])}, name="FIX-E")
    return t.copy(alpha=alpha)


FIXTURES = {
    "FIX-A": fix_a,
    "FIX-B": fix_b,
    "FIX-C": fix_c,
    "FIX-D": fix_d,
    "FIX-E": fix_e,
}


def fixture(name) -> TwistedPartialAction:
    return FIXTURES[name]()


def all_fixtures():
    return {name: f() for name, f in FIXTURES.items()}


def _misaligned_shift():
    # C_3 on Z_2^3 with D_g = {1,2}, D_g2 = {0,1}: each alpha is a valid
    # isomorphism but alpha_g(D_g2 D_g) lands on block 2, not D_g D_g2 = {1}.
    base = shift_ambient()
    ring = base.ring
    D = (ring.all_blocks, frozenset({1, 2}), frozenset({0, 1}))
    alpha = (PartialIso.identity(ring), PartialIso.build(ring, {0: 1, 1: 2}),
             PartialIso.build(ring, {1: 0, 2: 1}))
    w = {}
    for (g, h) in base.w:
        w[(g, h)] = ring.idempotent(D[g] & D[(g + h) % 3])
    return TwistedPartialAction(base.group, ring, D, alpha, w, name="misaligned-shift")


def negatives():
    """(name, action, check expected to fail) for single-point corruptions."""
    out = []

    c = fix_c()
    out.append(("FIX-C/w[g,g]=0", c.with_twist((1, 1), c.ring.zero()), "twist-invertible"))
    out.append(("FIX-C/w[g,g]=0:iv", c.with_twist((1, 1), c.ring.zero()), "composition"))
    out.append(("FIX-C/w[g,g] leaks off support", c.with_twist((1, 1), c.ring.scalars([2, 1])),
                "twist-invertible"))

    b = fix_b()
    out.append(("FIX-B/w[g,1]=2", b.with_twist((1, 0), b.ring.scalars([2])), "normalized"))
    out.append(("FIX-B/w[g,1]=2:vi", b.with_twist((1, 0), b.ring.scalars([2])), "cocycle-identity"))

    a = fix_a()
    out.append(("FIX-A/D_1 shrunk", a.copy(D=(frozenset({0}),) + a.D[1:]), "identity-domain"))
    out.append(("FIX-A/D_g out of range", a.copy(D=(a.D[0], a.D[1] | {5}, a.D[2])), "domains"))
    out.append(("FIX-A/alpha_g lands on block 0",
                a.with_alpha(1, PartialIso.build(a.ring, {0: 0})), "alpha-isomorphism"))
    out.append(("misaligned domains", _misaligned_shift(), "domain-transport"))

    e = fix_e()
    out.append(("FIX-E/alpha_1 = conj(s)",
                e.with_alpha(0, PartialIso.build(e.ring, {0: 0}, {0: S_MATRIX})), "identity-map"))
    out.append(("FIX-E/alpha_g = conj(t)",
                e.with_alpha(1, PartialIso.build(e.ring, {0: 0}, {0: T_MATRIX})), "composition"))
    out.append(("FIX-E/w[g,g] = t", e.with_twist((1, 1), e.ring.element([T_MATRIX])), "twisted-cocycle"))

    d = fix_d()
    w11 = d.w[(1, 1)]
    out.append(("FIX-D/w[1,1] block 2 -> 2", d.with_twist((1, 1), w11 + d.ring.scalars([0, 0, 1])),
                "cocycle-identity"))
    return out


def swap_restriction():
    return restrict(swap_ambient(), {0, 1})


def fix_c_alt_twist():
    """A second extended twist for FIX-C: wt[g,g] = (2, 3) instead of (2, 1).

    Any unit in block 1 extends w here; this one differs from the
    constructed twist, so it yields a different globalization.
    """
    c = fix_c()
    one = c.ring.one()
    return {(0, 0): one, (0, 1): one, (1, 0): one, (1, 1): c.ring.scalars([2, 3])}
