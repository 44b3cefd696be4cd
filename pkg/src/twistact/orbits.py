"""Block orbits, stabilizers, transversals and the padding maps theta_x.

Within one orbit, fix a base block R_1. H is its stabilizer, Lambda' a left
transversal of H, and Lambda the representatives g for which alpha_g is
defined on R_1; then the orbit is the disjoint union of R_g = alpha_g(R_1)
over g in Lambda.

The guard in the definition of theta_x is read as "bar(x^-1) in Lambda",
which is equivalent to R_1 inside D_x and is what makes alpha_x^-1
applicable to the base entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .action import TwistedPartialAction
from .groups import Subgroup, Transversal, left_transversal, subgroup
from .report import Report
from .rings import RingElement


class NotTransitiveOnOrbit(ValueError):
    pass


@dataclass(frozen=True)
class OrbitDecomposition:
    action: TwistedPartialAction
    representatives: tuple
    orbit_ideals: dict  # representative -> frozenset of blocks

    def orbit_of(self, block):
        for rep, blocks in self.orbit_ideals.items():
            if block in blocks:
                return rep
        raise KeyError(block)

    def __len__(self):
        return len(self.representatives)


def decompose_orbits(tpa: TwistedPartialAction) -> OrbitDecomposition:
    n = len(tpa.ring)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for al in tpa.alpha:
        for s, t in al.block_map.items():
            a, b = find(s), find(t)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits = {}
    for i in range(n):
        orbits.setdefault(find(i), set()).add(i)
    ideals = {min(o): frozenset(o) for o in orbits.values()}
    return OrbitDecomposition(tpa, tuple(sorted(ideals)), ideals)


def is_transitive(tpa: TwistedPartialAction) -> bool:
    return len(decompose_orbits(tpa)) == 1


@dataclass(frozen=True)
class TransitiveStructure:
    action: TwistedPartialAction
    base_block: int
    orbit: frozenset
    H: Subgroup
    transversal: Transversal
    lam: tuple  # Lambda, in transversal order
    block_of: dict  # g in Lambda -> block alpha_g(R_1)

    @property
    def reps(self):
        return self.transversal.reps

    def bar(self, x):
        return self.transversal.bar[x]

    def contains_base(self, g):
        """R_1 inside D_g."""
        return self.base_block in self.action.D[g]


def build_transitive_structure(tpa: TwistedPartialAction, base_block=None, reps=None,
                               check=True) -> TransitiveStructure:
    """H, Lambda', Lambda and block_of for the orbit of ``base_block``.

    ``reps`` optionally fixes the transversal. With ``check`` the
    consistency conditions on the bar map are verified and a violation
    raises NotTransitiveOnOrbit.
    """
    G = tpa.group
    dec = decompose_orbits(tpa)
    if base_block is None:
        base_block = dec.representatives[0]
    if not 0 <= base_block < len(tpa.ring):
        raise NotTransitiveOnOrbit(f"base block {base_block} out of range")
    orbit = dec.orbit_ideals[dec.orbit_of(base_block)]

    def moves_to(g):
        if base_block not in tpa.D[G.inv(g)]:
            return None
        return tpa.alpha[g].block_map[base_block]

    H = subgroup(G, [g for g in G.elements if moves_to(g) == base_block])
    tr = left_transversal(G, H, reps)
    lam = tuple(g for g in tr.reps if moves_to(g) is not None)
    block_of = {g: moves_to(g) for g in lam}
    ts = TransitiveStructure(tpa, base_block, orbit, H, tr, lam, block_of)
    if set(block_of.values()) != set(orbit) or len(set(block_of.values())) != len(lam):
        raise NotTransitiveOnOrbit(
            f"blocks alpha_g(R_1), g in Lambda, are {sorted(block_of.values())}, orbit is {sorted(orbit)}")
    if check:
        rep = verify_bar_lemma(ts)
        if not rep.passed:
            raise NotTransitiveOnOrbit(rep.to_text())
    return ts


def structures(tpa: TwistedPartialAction, base_blocks=None, reps=None):
    """One TransitiveStructure per orbit.

    ``base_blocks`` maps orbit representative -> chosen base block and
    ``reps`` maps orbit representative -> transversal; both are optional.
    """
    dec = decompose_orbits(tpa)
    base_blocks = base_blocks or {}
    reps = reps or {}
    return [build_transitive_structure(tpa, base_blocks.get(r, r), reps.get(r))
            for r in dec.representatives]


def verify_bar_lemma(ts: TransitiveStructure) -> Report:
    """The three bar-map properties, and R_1 in D_x^-1 iff R_1 in D_bar(x)^-1."""
    tpa, G = ts.action, ts.action.group
    rep = Report("orbits")
    base = ts.base_block
    lam = set(ts.lam)

    for g in G.elements:
        in_h = g in ts.H
        fixes = base in tpa.D[G.inv(g)] and tpa.alpha[g].block_map.get(base) == base
        rep.record("stabilizer", "H = {g : alpha_g(R_1) = R_1}", in_h == fixes, {"g": g})

    for g in ts.reps:
        ok = (base in tpa.D[G.inv(g)]) == (g in lam)
        rep.record("bar-i", "g in Lambda', R_1 in D_(g^-1) <=> g in Lambda", ok, {"g": g})

    for x, g in product(G.elements, ts.lam):
        rg = ts.block_of[g]
        xg = ts.bar(G.mul(x, g))
        applicable = rg in tpa.D[G.inv(x)]
        ok = applicable == (xg in lam)
        if ok and applicable:
            ok = tpa.alpha[x].block_map[rg] == ts.block_of[xg]
        rep.record("bar-ii", "g, bar(xg) in Lambda <=> R_g in D_(x^-1); then alpha_x(R_g) = R_bar(xg)",
                   ok, {"x": x, "g": g})

    for x, g in product(G.elements, ts.reps):
        k = ts.bar(G.mul(G.inv(x), g))
        if k in lam and ts.block_of[k] in tpa.D[G.inv(x)]:
            rep.record("bar-iii", "g in Lambda', R_bar(x^-1 g) in D_(x^-1) => g in Lambda",
                       g in lam, {"x": x, "g": g})
        else:
            rep.record("bar-iii", "g in Lambda', R_bar(x^-1 g) in D_(x^-1) => g in Lambda", True)

    for x in G.elements:
        lhs = base in tpa.D[G.inv(x)]
        rhs = base in tpa.D[G.inv(ts.bar(x))]
        rep.record("fromeasy", "R_1 in D_(x^-1) <=> R_1 in D_(bar(x)^-1)", lhs == rhs, {"x": x})
    return rep


def theta(ts: TransitiveStructure, x, a: RingElement) -> RingElement:
    """theta_x(a): 1 everywhere except the bar(x^-1) entry, which is alpha_x^-1(pr_1 a).

    Blocks outside the orbit are padded with 1 as well.
    """
    tpa, G = ts.action, ts.action.group
    ring = tpa.ring
    k = ts.bar(G.inv(x))
    if k not in ts.lam:
        return ring.one()
    base_part = RingElement(ring, tuple(a.entries[i] if i == ts.base_block else _zero_like(m)
                                        for i, m in enumerate(a.entries)))
    moved = tpa.act_inv(x, base_part)
    target = ts.block_of[k]
    entries = list(ring.one().entries)
    entries[target] = moved.entries[target]
    return RingElement(ring, tuple(entries))


def _zero_like(m):
    return tuple((0,) * len(r) for r in m)


def verify_theta_lemmas(ts: TransitiveStructure, limit=256, seed=0) -> Report:
    """theta_x(a) = theta_x(a 1_h), the two theta identities and multiplicativity.

    theta is not additive, so ring variables run over every element when the
    relevant ideal has at most ``limit`` elements and over a seeded sample
    otherwise.
    """
    tpa, G = ts.action, ts.action.group
    ring = tpa.ring
    rep = Report("orbits")
    inv, mul = G.inv, G.mul
    elems = ring.sample(limit=limit, seed=seed)

    for x, h in product(G.elements, ts.H.sorted()):
        one_h = tpa.one(h)
        for a in elems:
            if not rep.record("obvious", "theta_x(a) = theta_x(a 1_h), h in H",
                              theta(ts, x, a) == theta(ts, x, a * one_h),
                              {"x": x, "h": h, "a": a}):
                break

    for x, g in product(G.elements, ts.reps):
        gi = inv(g)
        one_x, one_gix = tpa.one(x), tpa.one(mul(gi, x))
        for a in elems:
            ok = one_x * theta(ts, gi, a * one_gix) == one_x * theta(ts, gi, a)
            if not rep.record("theta-i", "1_x theta_(g^-1)(a 1_(g^-1 x)) = 1_x theta_(g^-1)(a)",
                              ok, {"x": x, "g": g, "a": a}):
                break

    for x, g in product(G.elements, ts.reps):
        k = ts.bar(mul(inv(x), g))
        ki = inv(k)
        support = tpa.D[mul(ki, inv(x))] & tpa.D[ki] & tpa.D[mul(mul(ki, inv(x)), g)]
        for a in ring.sample(support, limit=limit, seed=seed):
            inner = tpa.act(inv(g), tpa.act(x, tpa.act_inv(ki, a)))
            lhs = tpa.one(x) * theta(ts, inv(g), inner)
            rhs = tpa.act(x, tpa.one(inv(x)) * theta(ts, ki, a))
            if not rep.record("theta-ii",
                              "1_x theta_(g^-1) alpha_(g^-1) alpha_x alpha^-1_(k^-1)(a) = alpha_x(1_(x^-1) theta_(k^-1)(a))",
                              lhs == rhs, {"x": x, "g": g, "a": a}):
                break

    small = elems if len(elems) <= 64 else elems[:64]
    for x in G.elements:
        for a, b in product(small, repeat=2):
            if not rep.record("multiplicative", "theta_x(ab) = theta_x(a) theta_x(b)",
                              theta(ts, x, a * b) == theta(ts, x, a) * theta(ts, x, b),
                              {"x": x, "a": a, "b": b}):
                break
    return rep


def orbit_report(tpa: TwistedPartialAction, base_blocks=None, reps=None) -> Report:
    dec = decompose_orbits(tpa)
    rep = Report("orbits")
    out = []
    for ts in structures(tpa, base_blocks, reps):
        rep.extend(verify_bar_lemma(ts), prefix=f"orbit{ts.base_block}/")
        rep.extend(verify_theta_lemmas(ts), prefix=f"orbit{ts.base_block}/")
        out.append({
            "base_block": ts.base_block,
            "blocks": sorted(ts.orbit),
            "H": ts.H.sorted(),
            "Lambda'": list(ts.reps),
            "Lambda": list(ts.lam),
            "block_of": {str(g): b for g, b in ts.block_of.items()},
        })
    rep.data["orbits"] = out
    rep.data["transitive"] = len(dec) == 1
    return rep
