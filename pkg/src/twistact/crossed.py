"""Crossed products A *_alpha G = sum_g D_g delta_g and their ring laws."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .action import TwistedPartialAction
from .report import Report
from .rings import RingElement


class ActionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CrossedElement:
    action: TwistedPartialAction
    coeffs: tuple  # coeffs[g] is supported on D_g

    def _check(self, other):
        if other.action is not self.action:
            raise ActionMismatch("crossed elements over different actions")

    def __add__(self, other):
        self._check(other)
        return CrossedElement(self.action, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return CrossedElement(self.action, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        return cp_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, CrossedElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def vector(self):
        return [x for c in self.coeffs for x in c.vector()]

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        terms = [f"{c!r}d{g}" for g, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(terms) or "0"


def zero(action):
    return CrossedElement(action, tuple(action.ring.zero() for _ in action.group.elements))


def monomial(action, a: RingElement, g) -> CrossedElement:
    """a delta_g, with a cut down to D_g."""
    coeffs = [action.ring.zero() for _ in action.group.elements]
    coeffs[g] = a * action.one(g)
    return CrossedElement(action, tuple(coeffs))


def identity(action):
    return monomial(action, action.ring.one(), action.group.identity)


def cp_mul(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    """(a_g d_g)(b_h d_h) = alpha_g(alpha_g^-1(a_g) b_h) w_(g,h) d_gh, bilinearly."""
    x._check(y)
    act = x.action
    G = act.group
    out = [act.ring.zero() for _ in G.elements]
    for g, a in enumerate(x.coeffs):
        if a.is_zero():
            continue
        a_pre = act.act_inv(g, a)
        for h, b in enumerate(y.coeffs):
            if b.is_zero():
                continue
            gh = G.mul(g, h)
            out[gh] = out[gh] + act.act(g, a_pre * b) * act.w[(g, h)]
    return CrossedElement(act, tuple(out))


def moduli(action):
    ring = action.ring
    per = [ring.modulus(i) for i, b in enumerate(ring.blocks) for _ in range(b.k * b.k)]
    return per * len(action.group.elements)


def spanning_set(action):
    """a delta_g for a over additive generators of each D_g."""
    return [monomial(action, a, g) for g in action.group.elements
            for a in action.ring.spanning_set(action.D[g])]


def all_elements(action):
    per_g = [list(action.ring.elements(action.D[g])) for g in action.group.elements]
    for combo in product(*per_g):
        yield CrossedElement(action, tuple(combo))


def log2_size(action):
    return sum(action.ring.log2_size(action.D[g]) for g in action.group.elements)


EXHAUSTIVE_LIMIT = 32


def verify_ring_laws(action: TwistedPartialAction, mode="spanning") -> Report:
    """Associativity, distributivity and the unit law.

    ``spanning`` runs over all triples of additive generators, which settles
    both laws since they are multilinear. ``exhaustive`` runs every triple of
    elements and is limited to crossed products with at most 32 elements.
    """
    rep = Report("crossed")
    if mode == "exhaustive":
        size = 2 ** round(log2_size(action))
        if size > EXHAUSTIVE_LIMIT:
            raise ValueError(f"|A*G| = {size} too large for exhaustive mode")
        elems = list(all_elements(action))
    elif mode == "spanning":
        elems = spanning_set(action)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    prods = {}
    for x, y in product(elems, repeat=2):
        prods[(x, y)] = cp_mul(x, y)
    for x, y, z in product(elems, repeat=3):
        lhs = cp_mul(prods[(x, y)], z)
        rhs = cp_mul(x, prods[(y, z)])
        if not rep.record("associativity", "crossed product is associative", lhs == rhs,
                          {"x": repr(x), "y": repr(y), "z": repr(z)}):
            break
    for x, y, z in product(elems, repeat=3):
        ok = cp_mul(x, y + z) == prods[(x, y)] + prods[(x, z)] and \
            cp_mul(x + y, z) == prods[(x, z)] + prods[(y, z)]
        if not rep.record("distributivity", "crossed product is bilinear", ok,
                          {"x": repr(x), "y": repr(y), "z": repr(z)}):
            break
    one = identity(action)
    for x in elems:
        ok = cp_mul(one, x) == x and cp_mul(x, one) == x
        if not rep.record("unit", "1_A delta_1 is a two-sided identity", ok, {"x": repr(x)}):
            break
    rep.data["log2_size"] = log2_size(action)
    rep.data["elements_checked"] = len(elems)
    return rep
