"""Equivalence of twisted partial actions and the corestriction transform.

Two actions on the same ring with the same domains are equivalent when a
family of units eps_x of D_x satisfies

    alpha'_x(a) = eps_x alpha_x(a) eps_x^-1
    w'_(x,y)    = eps_x alpha_x(eps_y 1_(x^-1)) w_(x,y) eps_(xy)^-1.

Corestriction builds eps and a new twist w' out of theta-padded products of
the old twist along a transversal, so that w is recovered as
alpha_x(eps_y 1_(x^-1)) eps_x w'_(x,y) eps_(xy)^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .action import PartialIso, TwistedPartialAction, verify_axioms
from .orbits import decompose_orbits, structures, theta
from .report import Report
from .rings import BlockIso, NotAUnit, RingElement, mat_mul, try_invert


class InvalidWitness(ValueError):
    pass


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EquivalenceWitness:
    epsilon: tuple  # epsilon[g] is a unit of D_g

    def __getitem__(self, g):
        return self.epsilon[g]

    def inverse(self, tpa):
        return EquivalenceWitness(tuple(try_invert(e, tpa.D[g]) for g, e in enumerate(self.epsilon)))

    def compose(self, other: "EquivalenceWitness"):
        """Witness for alpha -> alpha'' from self: alpha -> alpha' and other: alpha' -> alpha''."""
        return EquivalenceWitness(tuple(b * a for a, b in zip(self.epsilon, other.epsilon)))


def identity_witness(tpa) -> EquivalenceWitness:
    return EquivalenceWitness(tuple(tpa.one(g) for g in tpa.group.elements))


def make_witness(tpa, eps) -> EquivalenceWitness:
    """Validate that eps[g] is a unit of D_g and wrap it."""
    eps = tuple(eps[g] for g in tpa.group.elements)
    for g, e in enumerate(eps):
        try:
            try_invert(e, tpa.D[g])
        except NotAUnit as exc:
            raise InvalidWitness(f"eps_{g} is not a unit of D_{g} (block {exc.block})") from exc
    return EquivalenceWitness(eps)


def conjugate_iso(al: PartialIso, e: RingElement) -> PartialIso:
    """a -> e alpha(a) e^-1 as a PartialIso."""
    ring = e.ring
    isos = []
    for iso in al.isos:
        n = ring.modulus(iso.target)
        isos.append(BlockIso(iso.source, iso.target, mat_mul(e.entries[iso.target], iso.conjugator, n)))
    return PartialIso(al.domain, al.codomain, tuple(isos))


def apply_epsilon(tpa: TwistedPartialAction, eps) -> TwistedPartialAction:
    """The action equivalent to ``tpa`` through the witness ``eps``."""
    if not isinstance(eps, EquivalenceWitness):
        eps = make_witness(tpa, eps)
    else:
        make_witness(tpa, eps.epsilon)
    G = tpa.group
    e_inv = [try_invert(e, tpa.D[g]) for g, e in enumerate(eps.epsilon)]
    alpha = tuple(conjugate_iso(tpa.alpha[x], eps[x]) for x in G.elements)
    w = {}
    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        w[(x, y)] = eps[x] * tpa.act(x, eps[y] * tpa.one(G.inv(x))) * tpa.w[(x, y)] * e_inv[xy]
    return TwistedPartialAction(G, tpa.ring, tpa.D, alpha, w, name=tpa.name)


def check_equivalent(t1: TwistedPartialAction, t2: TwistedPartialAction, eps) -> Report:
    """Does ``eps`` carry t1 to t2?"""
    if t1.group != t2.group or t1.ring != t2.ring:
        raise DomainMismatch("actions live on different groups or rings")
    if t1.D != t2.D:
        bad = [g for g in t1.group.elements if t1.D[g] != t2.D[g]]
        raise DomainMismatch(f"domains differ at g = {bad[0]}")
    G = t1.group
    rep = Report("equivalent")
    eps_t = eps.epsilon if isinstance(eps, EquivalenceWitness) else tuple(eps[g] for g in G.elements)
    e_inv = []
    for g, e in enumerate(eps_t):
        try:
            e_inv.append(try_invert(e, t1.D[g]))
            rep.record("witness", "eps_x is a unit of D_x", True)
        except NotAUnit:
            rep.record("witness", "eps_x is a unit of D_x", False, {"x": g})
            return rep
    for x in G.elements:
        for a in t1.ring.spanning_set(t1.D[G.inv(x)]):
            lhs = t2.act(x, a)
            rhs = eps_t[x] * t1.act(x, a) * e_inv[x]
            if not rep.record("alpha", "alpha'_x(a) = eps_x alpha_x(a) eps_x^-1", lhs == rhs,
                              {"x": x, "a": a, "lhs": lhs, "rhs": rhs}):
                break
    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        rhs = eps_t[x] * t1.act(x, eps_t[y] * t1.one(G.inv(x))) * t1.w[(x, y)] * e_inv[xy]
        rep.record("w", "w'_(x,y) = eps_x alpha_x(eps_y 1_(x^-1)) w_(x,y) eps_(xy)^-1",
                   t2.w[(x, y)] == rhs, {"x": x, "y": y, "lhs": t2.w[(x, y)], "rhs": rhs})
    return rep


@dataclass
class Corestriction:
    action: TwistedPartialAction  # the corestricted action alpha'
    epsilon: tuple  # eps_x
    w_prime: dict  # w'[x,y] from the product formula
    witness: EquivalenceWitness  # carries tpa to action, equal to eps^-1
    report: Report


def corestriction_data(tpa: TwistedPartialAction, sts=None, over="lambda"):
    """eps_x and the twist products, orbit by orbit.

    ``over="lambda"`` multiplies over Lambda and cuts down by 1_x, 1_x 1_xy;
    ``over="transversal"`` multiplies over all of Lambda' with no cut, which
    gives the padded variants used to extend the twist.
    """
    G = tpa.group
    ring = tpa.ring
    sts = sts if sts is not None else structures(tpa)
    inv, mul = G.inv, G.mul
    eps, wp = {}, {}
    for x in G.elements:
        e = ring.one()
        for ts in sts:
            gs = ts.lam if over == "lambda" else ts.reps
            for g in gs:
                gi = inv(g)
                k = ts.bar(mul(inv(x), g))
                first = mul(mul(gi, x), k)
                val = tpa.w[(gi, x)] * tpa.twist_inv(first, inv(k))
                e = e * theta(ts, gi, val)
        eps[x] = e if over != "lambda" else tpa.one(x) * e
    for x, y in product(G.elements, repeat=2):
        p = ring.one()
        for ts in sts:
            gs = ts.lam if over == "lambda" else ts.reps
            for g in gs:
                gi = inv(g)
                k = ts.bar(mul(inv(x), g))
                m = ts.bar(mul(inv(y), mul(inv(x), g)))
                first = mul(mul(gi, x), k)
                second = mul(mul(inv(k), y), m)
                p = p * theta(ts, gi, tpa.w[(first, second)])
        wp[(x, y)] = p if over != "lambda" else tpa.ones(x, mul(x, y)) * p
    return eps, wp


def corestrict(tpa: TwistedPartialAction, sts=None) -> Corestriction:
    G = tpa.group
    sts = sts if sts is not None else structures(tpa)
    eps, wp = corestriction_data(tpa, sts)
    rep = Report("corestrict")
    eps_inv = {}
    for x in G.elements:
        try:
            eps_inv[x] = try_invert(eps[x], tpa.D[x])
            rep.record("epsilon-unit", "eps_x is a unit of D_x", True)
        except NotAUnit as exc:
            rep.record("epsilon-unit", "eps_x is a unit of D_x", False, {"x": x, "block": exc.block})
    if not rep.passed:
        return Corestriction(None, eps, wp, None, rep)

    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        rhs = tpa.act(x, eps[y] * tpa.one(G.inv(x))) * eps[x] * wp[(x, y)] * eps_inv[xy]
        rep.record("equiv", "w_(x,y) = alpha_x(eps_y 1_(x^-1)) eps_x w'_(x,y) eps_(xy)^-1",
                   tpa.w[(x, y)] == rhs, {"x": x, "y": y, "w": tpa.w[(x, y)], "rhs": rhs})

    witness = EquivalenceWitness(tuple(eps_inv[x] for x in G.elements))
    new = apply_epsilon(tpa, witness)
    new.name = f"{tpa.name} corestricted" if tpa.name else ""
    for key in wp:
        rep.record("twist-formula", "apply_epsilon(alpha, eps^-1) has twist w'",
                   new.w[key] == wp[key], {"pair": key, "transform": new.w[key], "formula": wp[key]})
    ax = verify_axioms(new)
    rep.extend(ax, prefix="axioms/")
    rep.record("orbits-preserved", "alpha' has the same block orbits as alpha",
               decompose_orbits(new).orbit_ideals == decompose_orbits(tpa).orbit_ideals)
    rep.extend(check_equivalent(tpa, new, witness), prefix="equivalent/")
    rep.data["epsilon"] = {str(x): eps[x] for x in G.elements}
    rep.data["w_prime"] = {f"{x},{y}": wp[(x, y)] for x, y in sorted(wp)}
    return Corestriction(new, tuple(eps[x] for x in G.elements), wp, witness, rep)
