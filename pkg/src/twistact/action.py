"""Twisted partial actions on product rings and their axiom checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .groups import FiniteGroup
from .report import Report
from .rings import (BlockIso, NotAUnit, ProductRing, RingElement, mat_identity,
                    restrict_to, try_invert)


class UnverifiedAction(ValueError):
    """Raised when a construction needs an action that fails its axioms."""

    def __init__(self, report):
        self.report = report
        names = ", ".join(c.name for c in report.failures())
        super().__init__(f"action fails: {names}")


@dataclass(frozen=True)
class PartialIso:
    """Ring isomorphism between two block ideals, one BlockIso per moved block."""

    domain: frozenset
    codomain: frozenset
    isos: tuple

    @classmethod
    def build(cls, ring: ProductRing, block_map, conjugators=None):
        """``block_map``: source -> target; ``conjugators``: target -> unit matrix."""
        conjugators = conjugators or {}
        isos = []
        for s, t in sorted(dict(block_map).items()):
            u = conjugators.get(t)
            if u is None:
                u = mat_identity(ring.blocks[t].k)
            isos.append(BlockIso(s, t, tuple(tuple(r) for r in u)))
        return cls(frozenset(dict(block_map)), frozenset(dict(block_map).values()), tuple(isos))

    @classmethod
    def identity(cls, ring: ProductRing, support=None):
        support = ring.all_blocks if support is None else support
        return cls.build(ring, {i: i for i in support})

    @property
    def block_map(self):
        return {iso.source: iso.target for iso in self.isos}

    def image_blocks(self, blocks):
        bm = self.block_map
        return frozenset(bm[b] for b in blocks if b in bm)

    def apply(self, a: RingElement) -> RingElement:
        """alpha(a 1_dom); zero off the codomain."""
        ring = a.ring
        entries = [None] * len(ring.blocks)
        for iso in self.isos:
            entries[iso.target] = iso.apply(a.entries[iso.source], ring.modulus(iso.target))
        return ring.element([e if e is not None else 0 for e in entries])

    def inverse(self, ring: ProductRing) -> "PartialIso":
        isos = tuple(sorted((iso.inverse(ring.modulus(iso.target)) for iso in self.isos),
                            key=lambda i: i.source))
        return PartialIso(self.codomain, self.domain, isos)

    def structural_problems(self, ring: ProductRing):
        out = []
        targets = [iso.target for iso in self.isos]
        if len(set(targets)) != len(targets):
            out.append("block map is not injective")
        for iso in self.isos:
            if not (0 <= iso.source < len(ring) and 0 <= iso.target < len(ring)):
                out.append(f"block {iso.source}->{iso.target} out of range")
                continue
            if ring.blocks[iso.source] != ring.blocks[iso.target]:
                out.append(f"block {iso.source}->{iso.target} changes block type")
                continue
            bt = ring.blocks[iso.target]
            try:
                iso.inverse_conjugator(bt.modulus)
            except NotAUnit:
                out.append(f"conjugator on block {iso.target} is not a unit")
        return out


@dataclass
class TwistedPartialAction:
    group: FiniteGroup
    ring: ProductRing
    D: tuple
    alpha: tuple
    w: dict
    name: str = ""
    _certificate: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.D = tuple(frozenset(d) for d in self.D)
        self.alpha = tuple(self.alpha)

    # -- convenience ------------------------------------------------------
    def one(self, g) -> RingElement:
        return self.ring.idempotent(self.D[g])

    def ones(self, *gs) -> RingElement:
        s = self.ring.all_blocks
        for g in gs:
            s = s & self.D[g]
        return self.ring.idempotent(s)

    def act(self, g, a) -> RingElement:
        """alpha_g(a 1_{g^-1})."""
        return self.alpha[g].apply(a)

    @cached_property
    def _alpha_inv(self):
        return tuple(al.inverse(self.ring) for al in self.alpha)

    def act_inv(self, g, a) -> RingElement:
        """alpha_g^{-1}(a 1_g), the inverse of alpha_g (not alpha_{g^-1})."""
        return self._alpha_inv[g].apply(a)

    def twist(self, g, h) -> RingElement:
        return self.w[(g, h)]

    def twist_support(self, g, h):
        return self.D[g] & self.D[self.group.mul(g, h)]

    @cached_property
    def _w_inv(self):
        return {}

    def twist_inv(self, g, h) -> RingElement:
        key = (g, h)
        if key not in self._w_inv:
            self._w_inv[key] = try_invert(self.w[key], self.twist_support(g, h))
        return self._w_inv[key]

    def inv_on(self, x: RingElement, support) -> RingElement:
        return try_invert(x, support)

    @property
    def elements(self):
        return self.group.elements

    def copy(self, **changes) -> "TwistedPartialAction":
        kw = dict(group=self.group, ring=self.ring, D=self.D, alpha=self.alpha,
                  w=dict(self.w), name=self.name)
        kw.update(changes)
        return TwistedPartialAction(**kw)

    def with_twist(self, key, value) -> "TwistedPartialAction":
        w = dict(self.w)
        w[key] = value
        return self.copy(w=w)

    def with_alpha(self, g, al) -> "TwistedPartialAction":
        alpha = list(self.alpha)
        alpha[g] = al
        return self.copy(alpha=tuple(alpha))

    @property
    def certified(self):
        return self._certificate is not None


def is_global(tpa: TwistedPartialAction) -> bool:
    return all(d == tpa.ring.all_blocks for d in tpa.D)


def same_data(t1: TwistedPartialAction, t2: TwistedPartialAction) -> bool:
    return (t1.group == t2.group and t1.ring == t2.ring and t1.D == t2.D
            and t1.alpha == t2.alpha and t1.w == t2.w)


def verify_axioms(tpa: TwistedPartialAction) -> Report:
    """Exhaustive check of the six axioms over all group tuples.

    Equations in a ring variable are checked on additive generators of the
    relevant ideal; both sides are additive in that variable.
    """
    G, ring = tpa.group, tpa.ring
    rep = Report("validate")
    e = G.identity
    n = len(ring)
    inv = G.inv
    mul = G.mul

    ok_domains = True
    for g in G.elements:
        bad = [b for b in tpa.D[g] if not (isinstance(b, int) and 0 <= b < n)]
        ok_domains &= rep.record("domains", "axiom (i): D_g idempotent commuting ideals",
                                 not bad, {"g": g, "blocks": bad})
    if not ok_domains:
        return rep

    rep.record("identity-domain", "axiom (ii): D_1 = A", tpa.D[e] == ring.all_blocks,
               {"D_1": tpa.D[e]})
    al1 = tpa.alpha[e]
    ident = al1.domain == ring.all_blocks and all(iso.source == iso.target for iso in al1.isos)
    if ident:
        for a in ring.spanning_set():
            if not rep.record("identity-map", "axiom (ii): alpha_1 = id", tpa.act(e, a) == a, {"a": a}):
                break
    else:
        rep.record("identity-map", "axiom (ii): alpha_1 = id", False, {"block_map": al1.block_map})

    struct_ok = True
    for g in G.elements:
        al = tpa.alpha[g]
        probs = al.structural_problems(ring)
        if al.domain != tpa.D[inv(g)]:
            probs.append(f"domain {sorted(al.domain)} != D_(g^-1) {sorted(tpa.D[inv(g)])}")
        if al.codomain != tpa.D[g]:
            probs.append(f"codomain {sorted(al.codomain)} != D_g {sorted(tpa.D[g])}")
        struct_ok &= rep.record("alpha-isomorphism", "alpha_g: D_(g^-1) -> D_g ring isomorphism",
                                not probs, {"g": g, "problems": probs})

    for g, h in product(G.elements, repeat=2):
        lhs = tpa.alpha[g].image_blocks(tpa.D[inv(g)] & tpa.D[h])
        rhs = tpa.D[g] & tpa.D[mul(g, h)]
        rep.record("domain-transport", "axiom (iii): alpha_g(D_(g^-1) D_h) = D_g D_gh",
                   lhs == rhs, {"g": g, "h": h, "image": lhs, "expected": rhs})

    w_ok = {}
    for g, h in product(G.elements, repeat=2):
        s = tpa.twist_support(g, h)
        w = tpa.w.get((g, h))
        good = w is not None and w.ring == ring
        witness = {"g": g, "h": h}
        if good:
            try:
                w_inv = try_invert(w, s)
                good = w * w_inv == ring.idempotent(s)
            except NotAUnit as exc:
                good = False
                witness["block"] = exc.block
        w_ok[(g, h)] = good
        rep.record("twist-invertible", "w_(g,h) is a unit of D_g D_gh", good, witness)

    if not struct_ok:
        rep.record("composition", "axiom (iv)", False, "alpha maps malformed")
    else:
        for g, h in product(G.elements, repeat=2):
            s = tpa.D[inv(h)] & tpa.D[inv(mul(g, h))]
            gh = mul(g, h)
            for a in ring.spanning_set(s):
                lhs = tpa.act(g, tpa.act(h, a))
                if not w_ok[(g, h)]:
                    rep.record("composition", "axiom (iv): alpha_g alpha_h = w alpha_gh w^-1",
                               False, {"g": g, "h": h, "reason": "w_(g,h) not invertible"})
                    break
                rhs = tpa.w[(g, h)] * tpa.act(gh, a) * tpa.twist_inv(g, h)
                if not rep.record("composition", "axiom (iv): alpha_g alpha_h = w alpha_gh w^-1",
                                  lhs == rhs, {"g": g, "h": h, "a": a, "lhs": lhs, "rhs": rhs}):
                    break
            else:
                rep.record("composition", "axiom (iv): alpha_g alpha_h = w alpha_gh w^-1", True)

    for g in G.elements:
        one_g = tpa.one(g)
        for key in ((e, g), (g, e)):
            w = tpa.w.get(key)
            rep.record("normalized", "axiom (v): w_(1,g) = w_(g,1) = 1", w == one_g,
                       {"pair": key, "w": w})

    if struct_ok:
        for g, h, t in product(G.elements, repeat=3):
            ht, gh = mul(h, t), mul(g, h)
            s = tpa.D[inv(g)] & tpa.D[h] & tpa.D[ht]
            w_ht, w_g_ht = tpa.w[(h, t)], tpa.w[(g, ht)]
            w_gh, w_gh_t = tpa.w[(g, h)], tpa.w[(gh, t)]
            for a in ring.spanning_set(s):
                lhs = tpa.act(g, a * w_ht) * w_g_ht
                rhs = tpa.act(g, a) * w_gh * w_gh_t
                if not rep.record("twisted-cocycle", "axiom (vi): alpha_g(a w_ht) w_g,ht = alpha_g(a) w_gh w_gh,t",
                                  lhs == rhs, {"g": g, "h": h, "t": t, "a": a}):
                    break
            else:
                rep.record("twisted-cocycle", "axiom (vi)", True)
            lhs = tpa.act(g, tpa.one(inv(g)) * w_ht) * w_g_ht
            rhs = w_gh * w_gh_t
            rep.record("cocycle-identity",
                       "unital form of (vi): alpha_x(1_(x^-1) w[y,z]) w[x,yz] = w[x,y] w[xy,z]",
                       lhs == rhs, {"x": g, "y": h, "z": t, "lhs": lhs, "rhs": rhs})

        for g, h in product(G.elements, repeat=2):
            lhs = tpa.act(g, tpa.one(inv(g)) * tpa.one(h))
            rhs = tpa.one(g) * tpa.one(mul(g, h))
            rep.record("idempotent-transport", "alpha_g(1_(g^-1) 1_h) = 1_g 1_gh",
                       lhs == rhs, {"g": g, "h": h})
    else:
        rep.record("twisted-cocycle", "axiom (vi)", False, "alpha maps malformed")
    return rep


def certify(tpa: TwistedPartialAction) -> TwistedPartialAction:
    """Run the axiom checker once and remember the result on the action."""
    if tpa._certificate is None:
        rep = verify_axioms(tpa)
        if not rep.passed:
            raise UnverifiedAction(rep)
        tpa._certificate = rep
    return tpa


def restrict(glob: TwistedPartialAction, ideal) -> TwistedPartialAction:
    """Restrict a twisted global action to the unital ideal on ``ideal``.

    The result acts on the ideal itself as a product ring; its block j is the
    j-th smallest block of ``ideal``.
    """
    if not is_global(glob):
        raise ValueError("restrict expects a global action")
    G, big = glob.group, glob.ring
    S = sorted(frozenset(ideal))
    if not S:
        raise ValueError("cannot restrict to the zero ideal")
    pos = {b: j for j, b in enumerate(S)}
    ring = ProductRing(tuple(big.blocks[b] for b in S))
    one_S = big.idempotent(S)

    def down(x):
        return RingElement(ring, tuple(x.entries[b] for b in S))

    D_big = [frozenset(S) & glob.alpha[x].image_blocks(S) for x in G.elements]
    D = [frozenset(pos[b] for b in d) for d in D_big]
    alpha = []
    for x in G.elements:
        dom = D_big[G.inv(x)]
        isos = tuple(BlockIso(pos[i.source], pos[i.target], i.conjugator)
                     for i in glob.alpha[x].isos if i.source in dom)
        alpha.append(PartialIso(frozenset(i.source for i in isos),
                                frozenset(i.target for i in isos), isos))
    w = {}
    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        w[(x, y)] = down(glob.w[(x, y)] * one_S * glob.act(x, one_S) * glob.act(xy, one_S))
    return TwistedPartialAction(G, ring, tuple(D), tuple(alpha), w,
                                name=f"{glob.name}|{S}" if glob.name else "")


def trivial_global(group: FiniteGroup, ring: ProductRing, perms=None, twist=None, name=""):
    """Global action where g moves block i to perms[g][i] with identity conjugators.

    ``twist`` maps (g,h) to a unit of the whole ring; missing pairs get 1.
    """
    perms = perms or {g: {i: i for i in range(len(ring))} for g in group.elements}
    alpha = tuple(PartialIso.build(ring, perms[g]) for g in group.elements)
    w = {}
    for g, h in product(group.elements, repeat=2):
        w[(g, h)] = (twist or {}).get((g, h), ring.one())
    D = tuple(ring.all_blocks for _ in group.elements)
    return TwistedPartialAction(group, ring, D, alpha, w, name=name)


def inflate(tpa: TwistedPartialAction, group: FiniteGroup, hom) -> TwistedPartialAction:
    """Pull an action back along a group homomorphism ``hom`` (a list)."""
    D = tuple(tpa.D[hom[g]] for g in group.elements)
    alpha = tuple(tpa.alpha[hom[g]] for g in group.elements)
    w = {(g, h): tpa.w[(hom[g], hom[h])] for g, h in product(group.elements, repeat=2)}
    return TwistedPartialAction(group, tpa.ring, D, alpha, w, name=tpa.name)


def direct_sum(t1: TwistedPartialAction, t2: TwistedPartialAction, name="") -> TwistedPartialAction:
    """Action on the product ring whose blocks are t1's followed by t2's."""
    if t1.group != t2.group:
        raise ValueError("direct sum needs a common group")
    ring = ProductRing(t1.ring.blocks + t2.ring.blocks)
    off = len(t1.ring)
    G = t1.group

    def lift(x1, x2):
        return RingElement(ring, x1.entries + x2.entries)

    D = tuple(t1.D[g] | frozenset(b + off for b in t2.D[g]) for g in G.elements)
    alpha = []
    for g in G.elements:
        isos = list(t1.alpha[g].isos) + [BlockIso(i.source + off, i.target + off, i.conjugator)
                                          for i in t2.alpha[g].isos]
        isos.sort(key=lambda i: i.source)
        alpha.append(PartialIso(frozenset(i.source for i in isos),
                                frozenset(i.target for i in isos), tuple(isos)))
    w = {k: lift(t1.w[k], t2.w[k]) for k in t1.w}
    return TwistedPartialAction(G, ring, D, tuple(alpha), w, name=name)


def relabel_blocks(tpa: TwistedPartialAction, perm) -> TwistedPartialAction:
    """Same action with block i renamed perm[i]."""
    old = tpa.ring
    inv_perm = {perm[i]: i for i in range(len(old))}
    ring = ProductRing(tuple(old.blocks[inv_perm[j]] for j in range(len(old))))

    def move(x):
        return RingElement(ring, tuple(x.entries[inv_perm[j]] for j in range(len(old))))

    D = tuple(frozenset(perm[b] for b in d) for d in tpa.D)
    alpha = []
    for al in tpa.alpha:
        isos = sorted((BlockIso(perm[i.source], perm[i.target], i.conjugator) for i in al.isos),
                      key=lambda i: i.source)
        alpha.append(PartialIso(frozenset(perm[b] for b in al.domain),
                                frozenset(perm[b] for b in al.codomain), tuple(isos)))
    w = {k: move(v) for k, v in tpa.w.items()}
    return TwistedPartialAction(tpa.group, ring, D, tuple(alpha), w, name=tpa.name)


def restrict_element(x: RingElement, support) -> RingElement:
    return restrict_to(x, support)
