"""Extended twists and globalizations inside the function ring F(G, A).

Given units wt[x,y] of A with wt 1_x 1_xy = w and

    alpha_x(wt[y,z] 1_(x^-1)) wt[x,yz] = 1_x wt[x,y] wt[xy,z],

the ring F = A^G of functions G -> A carries the global action

    beta_g(f)|_h = wt[h^-1,g] f(g^-1 h) wt[h^-1,g]^-1
    u[g,h]|_t   = wt[t^-1,g] wt[t^-1 g,h] wt[t^-1,gh]^-1

and phi(a)|_g = alpha_(g^-1)(a 1_g) embeds A as an ideal of
B = sum_g beta_g(phi(A)). F is itself a product of blocks: block
(g, l) of F is copy g of block l of A, stored at index g*m + l.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .action import PartialIso, TwistedPartialAction, certify, restrict, verify_axioms
from .corestriction import check_equivalent, corestriction_data, identity_witness
from .orbits import decompose_orbits, structures
from .report import Report
from .rings import (BlockIso, NotAUnit, ProductRing, RingElement, mat_identity,
                    recover_conjugator, try_invert)
from .span import ResidueSpan, ring_span


@dataclass
class ExtendedTwist:
    action: TwistedPartialAction
    wt: dict
    epsilon: dict = field(default_factory=dict)
    w_hat: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.wt[key]

    def inv(self, key):
        return try_invert(self.wt[key])


def alpha_tilde(tpa: TwistedPartialAction, x, a: RingElement) -> RingElement:
    """alpha_x(a 1_(x^-1)) + 1 - 1_x; multiplicative and unital, not additive."""
    return tpa.act(x, a) + tpa.ring.one() - tpa.one(x)


def _pad(tpa, x, e):
    return e + tpa.ring.one() - tpa.one(x)


def build_extended_twist(tpa: TwistedPartialAction, sts=None) -> ExtendedTwist:
    """wt[x,y] = at_x(et_y) et_x w_hat[x,y] et_(xy)^-1, orbit data multiplied together."""
    G = tpa.group
    sts = sts if sts is not None else structures(tpa)
    eps, _ = corestriction_data(tpa, sts, over="lambda")
    _, w_hat = corestriction_data(tpa, sts, over="transversal")
    et = {x: _pad(tpa, x, eps[x]) for x in G.elements}
    et_inv = {x: try_invert(et[x]) for x in G.elements}
    wt = {}
    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        wt[(x, y)] = alpha_tilde(tpa, x, et[y]) * et[x] * w_hat[(x, y)] * et_inv[xy]
    return ExtendedTwist(tpa, wt, eps, w_hat)


def verify_extended_cocycle(tpa: TwistedPartialAction, wt) -> Report:
    G = tpa.group
    wt = wt.wt if isinstance(wt, ExtendedTwist) else wt
    rep = Report("extended-twist")
    for key, v in sorted(wt.items()):
        rep.record("unit", "wt[x,y] is a unit of A", _is_unit(v), {"pair": key})
    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        rep.record("restricts", "wt[x,y] 1_x 1_xy = w[x,y]",
                   wt[(x, y)] * tpa.ones(x, xy) == tpa.w[(x, y)],
                   {"x": x, "y": y, "wt": wt[(x, y)], "w": tpa.w[(x, y)]})
    for x, y, z in product(G.elements, repeat=3):
        xy, yz = G.mul(x, y), G.mul(y, z)
        lhs = tpa.act(x, wt[(y, z)]) * wt[(x, yz)]
        rhs = tpa.one(x) * wt[(x, y)] * wt[(xy, z)]
        rep.record("extend", "alpha_x(wt[y,z] 1_(x^-1)) wt[x,yz] = 1_x wt[x,y] wt[xy,z]",
                   lhs == rhs, {"x": x, "y": y, "z": z, "lhs": lhs, "rhs": rhs})
    return rep


def _is_unit(v):
    try:
        try_invert(v)
        return True
    except NotAUnit:
        return False


def verify_twolaws(tpa: TwistedPartialAction, ext: ExtendedTwist, limit=256, seed=0) -> Report:
    """The composition law for alpha-tilde and the cocycle identity for w_hat."""
    G = tpa.group
    rep = Report("twolaws")
    mul = G.mul
    elems = tpa.ring.sample(limit=limit, seed=seed)
    for x, y in product(G.elements, repeat=2):
        xy = mul(x, y)
        wt, wt_inv = ext.wt[(x, y)], ext.inv((x, y))
        for a in elems:
            lhs = tpa.act(x, alpha_tilde(tpa, y, a))
            rhs = tpa.one(x) * wt * alpha_tilde(tpa, xy, a) * wt_inv
            if not rep.record("composition",
                              "alpha_x(1_(x^-1) at_y(a)) = 1_x wt[x,y] at_xy(a) wt[x,y]^-1",
                              lhs == rhs, {"x": x, "y": y, "a": a}):
                break
    wh, eps = ext.w_hat, ext.epsilon
    for x, y, z in product(G.elements, repeat=3):
        e_inv = try_invert(eps[x], tpa.D[x])
        lhs = e_inv * tpa.act(x, wh[(y, z)]) * eps[x] * wh[(x, mul(y, z))]
        rhs = tpa.one(x) * wh[(x, y)] * wh[(mul(x, y), z)]
        rep.record("cocycle2",
                   "eps_x^-1 alpha_x(1_(x^-1) w_hat[y,z]) eps_x w_hat[x,yz] = 1_x w_hat[x,y] w_hat[xy,z]",
                   lhs == rhs, {"x": x, "y": y, "z": z, "lhs": lhs, "rhs": rhs})
    for x in G.elements:
        for a, b in product(elems[:32], repeat=2):
            ok = alpha_tilde(tpa, x, a * b) == alpha_tilde(tpa, x, a) * alpha_tilde(tpa, x, b)
            if not rep.record("tilde-multiplicative", "at_x(ab) = at_x(a) at_x(b)", ok,
                              {"x": x, "a": a, "b": b}):
                break
        rep.record("tilde-unital", "at_x(1) = 1",
                   alpha_tilde(tpa, x, tpa.ring.one()) == tpa.ring.one(), {"x": x})
    return rep


def brute_force_extensions(tpa: TwistedPartialAction, cap=100000):
    """Every family of units wt satisfying the extension identity.

    wt[x,y] agrees with w on D_x D_xy and ranges over the units of the
    complementary ideal elsewhere. Returns None when the search space
    exceeds ``cap``.
    """
    G, ring = tpa.group, tpa.ring
    pairs = list(product(G.elements, repeat=2))
    choices = []
    total = 1
    for x, y in pairs:
        s = tpa.twist_support(x, y)
        free = ring.all_blocks - s
        units = ring.units(free) if free else [ring.zero()]
        choices.append([tpa.w[(x, y)] + u for u in units])
        total *= len(choices[-1])
        if total > cap:
            return None
    out = []
    for combo in product(*choices):
        wt = dict(zip(pairs, combo))
        if _extends(tpa, wt):
            out.append(wt)
    return out


def _extends(tpa, wt):
    G = tpa.group
    for x, y, z in product(G.elements, repeat=3):
        xy, yz = G.mul(x, y), G.mul(y, z)
        if tpa.act(x, wt[(y, z)]) * wt[(x, yz)] != tpa.one(x) * wt[(x, y)] * wt[(xy, z)]:
            return False
    return True


# -- the function ring and the globalization ------------------------------


@dataclass(frozen=True)
class BlockEmbedding:
    """A ring monomorphism A -> E sending block s into block t by u a u^-1.

    One block of A may land in several blocks of E. ``maps`` holds
    (source, target, conjugator) triples; the first triple for each source
    is used to invert the embedding on its image.
    """

    source: ProductRing
    target: ProductRing
    maps: tuple

    def apply(self, a: RingElement) -> RingElement:
        E = self.target
        entries = list(E.zero().entries)
        for s, t, c in self.maps:
            entries[t] = BlockIso(s, t, c).apply(a.entries[s], E.modulus(t))
        return RingElement(E, tuple(entries))

    def left_inverse(self, f: RingElement) -> RingElement:
        A = self.source
        entries = list(A.zero().entries)
        seen = set()
        for s, t, c in self.maps:
            if s in seen:
                continue
            seen.add(s)
            entries[s] = BlockIso(t, s, c).inverse(A.modulus(s)).apply(f.entries[t], A.modulus(s))
        return RingElement(A, tuple(entries))


@dataclass
class GlobalizationResult:
    """A global action on an ambient ring E together with phi: A -> E.

    B is the additive span of the beta_g(phi(A)); the globalization proper
    is (B, beta restricted to B, u 1_B).
    """

    action: TwistedPartialAction
    wt: ExtendedTwist
    F: ProductRing
    beta: TwistedPartialAction  # global action (E, beta, u)
    embedding: BlockEmbedding
    B_gens: list = field(default_factory=list)
    B: ResidueSpan = None
    one_B: RingElement = None
    base_blocks: dict = field(default_factory=dict)
    reps: dict = field(default_factory=dict)
    name: str = ""

    @property
    def group(self):
        return self.action.group

    @property
    def m(self):
        return len(self.action.ring)

    def lift(self, parts) -> RingElement:
        """The function g -> parts[g] (function-ring ambient only)."""
        return RingElement(self.F, tuple(e for p in parts for e in p.entries))

    def at(self, f: RingElement, g) -> RingElement:
        m = self.m
        return RingElement(self.action.ring, f.entries[g * m:(g + 1) * m])

    def phi(self, a: RingElement) -> RingElement:
        return self.embedding.apply(a)

    def phi_inv(self, f: RingElement) -> RingElement:
        return self.embedding.left_inverse(f)

    def act(self, g, f):
        return self.beta.act(g, f)

    def act_inv(self, g, f):
        return self.beta.act_inv(g, f)

    def u(self, g, h):
        return self.beta.w[(g, h)]

    def phi_span(self, support=None):
        return ring_span(self.F, [self.phi(a) for a in self.action.ring.spanning_set(support)])

    def in_B(self, f):
        return f.vector() in self.B

    def B_basis(self):
        return [self.F.from_vector(v) for v in self.B.basis()]

    def invert_in_B(self, b: RingElement) -> RingElement:
        """Inverse of a unit of B, via b + 1 - 1_B in the ambient ring."""
        pad = self.F.one() - self.one_B
        return try_invert(b + pad) * self.one_B

    def log2_size(self):
        return self.B.log2_size()

    def size(self):
        return self.B.size()

    def finish(self):
        """Compute the generators of B, its span and 1_B."""
        tpa = self.action
        self.B_gens = [self.act(g, self.phi(a)) for g in tpa.group.elements
                       for a in tpa.ring.spanning_set()]
        self.B = ring_span(self.F, self.B_gens)
        one_A = self.phi(tpa.ring.one())
        self.one_B = join_idempotents(self.act(g, one_A) for g in tpa.group.elements)
        return self


def function_embedding(tpa: TwistedPartialAction, F: ProductRing) -> BlockEmbedding:
    """phi(a)|_g = alpha_(g^-1)(a 1_g)."""
    G = tpa.group
    m = len(tpa.ring)
    maps = []
    order = [G.identity] + [g for g in G.elements if g != G.identity]
    for g in order:
        for iso in tpa.alpha[G.inv(g)].isos:
            maps.append((iso.source, g * m + iso.target, iso.conjugator))
    return BlockEmbedding(tpa.ring, F, tuple(maps))


def function_ring(tpa: TwistedPartialAction) -> ProductRing:
    return ProductRing(tpa.ring.blocks * tpa.group.order)


def global_action_on_F(tpa: TwistedPartialAction, wt: dict) -> TwistedPartialAction:
    G, A = tpa.group, tpa.ring
    m = len(A)
    F = function_ring(tpa)
    wt_inv = {k: try_invert(v) for k, v in wt.items()}
    beta = []
    for g in G.elements:
        isos = []
        for h in G.elements:
            src = G.mul(G.inv(g), h)
            c = wt[(G.inv(h), g)]
            for lam in range(m):
                isos.append(BlockIso(src * m + lam, h * m + lam, c.entries[lam]))
        isos.sort(key=lambda i: i.source)
        beta.append(PartialIso(F.all_blocks, F.all_blocks, tuple(isos)))
    u = {}
    for g, h in product(G.elements, repeat=2):
        parts = []
        for t in G.elements:
            ti = G.inv(t)
            parts.append(wt[(ti, g)] * wt[(G.mul(ti, g), h)] * wt_inv[(ti, G.mul(g, h))])
        u[(g, h)] = RingElement(F, tuple(e for p in parts for e in p.entries))
    D = tuple(F.all_blocks for _ in G.elements)
    return TwistedPartialAction(G, F, D, tuple(beta), u, name=f"F({tpa.name})")


def join_idempotents(es):
    out = None
    for e in es:
        out = e if out is None else out + e - out * e
    return out


def globalize(tpa: TwistedPartialAction, wt=None, base_blocks=None, reps=None) -> GlobalizationResult:
    """Globalization of ``tpa``; ``wt`` may supply another extended twist."""
    certify(tpa)
    base_blocks = dict(base_blocks or {})
    reps = dict(reps or {})
    if wt is None:
        sts = structures(tpa, base_blocks, reps)
        wt = build_extended_twist(tpa, sts)
    elif not isinstance(wt, ExtendedTwist):
        wt = ExtendedTwist(tpa, dict(wt))
    glob = global_action_on_F(tpa, wt.wt)
    F = glob.ring
    res = GlobalizationResult(tpa, wt, F, glob, function_embedding(tpa, F),
                              base_blocks=base_blocks, reps=reps, name=f"glob({tpa.name})")
    return res.finish()


def package_global(glob: TwistedPartialAction, ideal, name="") -> GlobalizationResult:
    """A global action seen as a globalization of its restriction to ``ideal``."""
    tpa = restrict(glob, ideal)
    S = sorted(frozenset(ideal))
    n = len(glob.ring)
    maps = tuple((j, b, mat_identity(glob.ring.blocks[b].k)) for j, b in enumerate(S))
    emb = BlockEmbedding(tpa.ring, glob.ring, maps)
    res = GlobalizationResult(tpa, None, glob.ring, glob, emb, name=name or f"{glob.name} on {n} blocks")
    return res.finish()


def restricted_action(res: GlobalizationResult) -> TwistedPartialAction:
    """Restrict (B, beta, u 1_B) to the ideal phi(A) and pull back along phi."""
    tpa, G = res.action, res.group
    A = tpa.ring
    one = res.phi(A.one())
    D = []
    for g in G.elements:
        image = ring_span(res.F, [res.act(g, res.phi(a)) for a in A.spanning_set()])
        blocks = frozenset(lam for lam in A.all_blocks
                           if res.phi(A.idempotent({lam})).vector() in image)
        D.append(blocks)
    alpha = []
    for g in G.elements:
        bmap, conj = {}, {}
        for lam in D[G.inv(g)]:
            e = A.idempotent({lam})
            img = res.phi_inv(res.act(g, res.phi(e)))
            targets = img.support()
            if len(targets) != 1:
                raise ValueError(f"beta_{g} does not move block {lam} onto a single block")
            t = next(iter(targets))
            bt = A.blocks[lam]

            def sigma(mat, lam=lam, t=t):
                x = res.phi(A.block_element(lam, mat))
                return res.phi_inv(res.act(g, x)).entries[t]

            bmap[lam] = t
            conj[t] = recover_conjugator(sigma, bt.k, bt.modulus)
        alpha.append(PartialIso.build(A, bmap, conj))
    w = {}
    for g, h in product(G.elements, repeat=2):
        gh = G.mul(g, h)
        val = res.u(g, h) * one * res.act(g, one) * res.act(gh, one)
        w[(g, h)] = res.phi_inv(val)
    return TwistedPartialAction(G, A, tuple(D), tuple(alpha), w, name=f"{tpa.name} roundtrip")


def verify_globalization(tpa: TwistedPartialAction, res: GlobalizationResult) -> Report:
    G, A, F = tpa.group, tpa.ring, res.F
    rep = Report("globalize")
    B = res.B
    phiA = res.phi_span()
    spanA = A.spanning_set()
    inv, mul = G.inv, G.mul

    rep.record("phi-injective", "phi is a monomorphism", phiA.size() == A.size(),
               {"|phi(A)|": phiA.size(), "|A|": A.size()})
    for a, b in product(spanA, repeat=2):
        ok = res.phi(a * b) == res.phi(a) * res.phi(b) and res.phi(a + b) == res.phi(a) + res.phi(b)
        if not rep.record("phi-hom", "phi is a ring homomorphism", ok, {"a": a, "b": b}):
            break

    rep.record("phi-in-B", "phi(A) inside B", phiA.issubset(B))
    for f in B.basis():
        fb = F.from_vector(f)
        for a in spanA:
            pa = res.phi(a)
            ok = (fb * pa).vector() in phiA and (pa * fb).vector() in phiA
            if not rep.record("ideal", "(i) phi(A) is an ideal of B", ok, {"b": fb, "a": a}):
                break

    recomputed = ring_span(F, list(reversed(res.B_gens)))
    rep.record("sum", "(ii) B = sum_g beta_g(phi(A))", recomputed == B)
    for f, f2 in product(B.basis(), repeat=2):
        prod_ = F.from_vector(f) * F.from_vector(f2)
        if not rep.record("B-subring", "B is closed under multiplication", res.in_B(prod_),
                          {"b1": F.from_vector(f), "b2": F.from_vector(f2)}):
            break

    for g in G.elements:
        image = ring_span(F, [res.act(g, res.phi(a)) for a in spanA])
        phiD = res.phi_span(tpa.D[g])
        ok = phiD.issubset(phiA) and phiD.issubset(image) and \
            phiD.size() == phiA.intersection_size(image)
        rep.record("deltas", "(iii) phi(D_g) = phi(A) cap beta_g(phi(A))", ok,
                   {"g": g, "|phi(D_g)|": phiD.size(), "|cap|": phiA.intersection_size(image)})

    for g in G.elements:
        for a in A.spanning_set(tpa.D[inv(g)]):
            ok = res.phi(tpa.act(g, a)) == res.act(g, res.phi(a))
            if not rep.record("intertwine", "(iv) phi alpha_g = beta_g phi on D_(g^-1)", ok,
                              {"g": g, "a": a}):
                break

    for g, h in product(G.elements, repeat=2):
        u = res.u(g, h)
        w = tpa.w[(g, h)]
        for a in A.spanning_set(tpa.twist_support(g, h)):
            ok = res.phi(a * w) == res.phi(a) * u and res.phi(w * a) == u * res.phi(a)
            if not rep.record("twist", "(v) phi(a w) = phi(a) u and phi(w a) = u phi(a)", ok,
                              {"g": g, "h": h, "a": a}):
                break
        gh = mul(g, h)
        rep.record("phi-w", "phi(w_(g,h)) = phi(1_g 1_gh) u_(g,h)",
                   res.phi(w) == res.phi(tpa.ones(g, gh)) * u, {"g": g, "h": h})

    gens = [F.from_vector(f) for f in B.basis()]
    for g, h in product(G.elements, repeat=2):
        u = res.u(g, h)
        left = ring_span(F, [u * b for b in gens])
        right = ring_span(F, [b * u for b in gens])
        rep.record("invariant", "u_(g,h) B = B = B u_(g,h)", left == B and right == B,
                   {"g": g, "h": h})

    ax = verify_axioms(res.beta)
    for c in ax.checks:
        label = {"composition": "betacomp", "cocycle-identity": "u-cocycle"}.get(c.name, c.name)
        rep.checks.append(type(c)(f"F-axioms/{label}", c.anchor, c.status, c.witness, c.count))

    one_B = res.one_B
    rep.record("one-B", "1_B lies in B and is its unity",
               res.in_B(one_B) and all(one_B * b == b == b * one_B for b in gens))
    for g in G.elements:
        ok = all(res.in_B(res.act(g, b)) for b in gens)
        rep.record("B-beta-invariant", "beta_g(B) = B", ok, {"g": g})
    for g, h in product(G.elements, repeat=2):
        u1 = res.u(g, h) * one_B
        ui = try_invert(res.u(g, h)) * one_B
        rep.record("B-twist-unit", "u_(g,h) 1_B is a unit of B",
                   res.in_B(u1) and u1 * ui == one_B, {"g": g, "h": h})
    rep.data["log2|B|"] = B.log2_size()
    rep.data["|B|"] = B.size()
    return rep


def roundtrip_report(tpa, res) -> Report:
    back = restricted_action(res)
    return check_equivalent(tpa, back, identity_witness(tpa))


def unital_structure(res: GlobalizationResult) -> Report:
    """B as a product of the blocks beta_g(phi(R_1)), orbit by orbit."""
    tpa, G, F = res.action, res.group, res.F
    A = tpa.ring
    rep = Report("unital-structure")
    inv, mul = G.inv, G.mul
    dec = decompose_orbits(tpa)
    sts = structures(tpa, res.base_blocks, res.reps)
    all_R = []
    orbit_spans = {}
    for ts in sts:
        base = ts.base_block
        R1 = [res.phi(a) for a in A.spanning_set({base})]

        def beta_span(x, gens):
            return ring_span(F, [res.act(x, f) for f in gens])

        Rg = {g: beta_span(g, R1) for g in ts.reps}
        for x, y in product(G.elements, repeat=2):
            same = beta_span(x, R1) == beta_span(y, R1)
            rep.record("R-stabilizer", "beta_x(R_1) = beta_y(R_1) <=> x^-1 y in H",
                       same == (mul(inv(x), y) in ts.H), {"x": x, "y": y, "base": base})
        for x, g in product(G.elements, ts.reps):
            moved = ring_span(F, [res.act(x, F.from_vector(v)) for v in Rg[g].basis()])
            rep.record("R-transport", "beta_x(R_g) = R_bar(xg)", moved == Rg[ts.bar(mul(x, g))],
                       {"x": x, "g": g, "base": base})
        e = {g: res.act(g, res.phi(A.idempotent({base}))) for g in ts.reps}
        for g, h in product(ts.reps, repeat=2):
            ok = (e[g] * e[h] == e[g]) if g == h else (e[g] * e[h]).is_zero()
            rep.record("R-orthogonal", "R_g R_h = 0 for g != h, e_g idempotent", ok, {"g": g, "h": h})
        block_size = A.blocks[base].size
        for g in ts.reps:
            ok = Rg[g].size() == block_size and Rg[g].issubset(res.B)
            rep.record("R-block", "R_g is a copy of the base block inside B", ok, {"g": g})
        orbit = ring_span(F, [F.from_vector(v) for g in ts.reps for v in Rg[g].basis()])
        orbit_spans[base] = orbit
        all_R.append((ts, Rg, e))
        prod_size = block_size ** len(ts.reps)
        rep.record("psi-orbit", "the orbit ideal of B is the product of its R_g",
                   orbit.size() == prod_size, {"base": base, "size": orbit.size(), "product": prod_size})
        # the orbit ideal of B is the beta-saturation of phi of the orbit ideal of A
        sat = ring_span(F, [res.act(x, res.phi(a)) for x in G.elements
                            for a in A.spanning_set(ts.orbit)])
        rep.record("orbit-correspondence", "O'_mu = sum_g beta_g(phi(O_mu))", sat == orbit,
                   {"base": base})
        phiO = res.phi_span(ts.orbit)
        rep.record("orbit-restriction", "phi(A) cap O'_mu = phi(O_mu)",
                   phiO.issubset(orbit) and res.phi_span().intersection_size(orbit) == phiO.size(),
                   {"base": base})

    total = 1
    for s in orbit_spans.values():
        total *= s.size()
    summed = None
    for s in orbit_spans.values():
        summed = s if summed is None else summed + s
    rep.record("psi", "psi: B -> prod R_g is an isomorphism",
               summed == res.B and total == res.B.size(), {"|B|": res.B.size(), "product": total})
    one_sum = None
    for _, _, e in all_R:
        for v in e.values():
            one_sum = v if one_sum is None else one_sum + v
    rep.record("unity", "sum of the e_g is 1_B", one_sum == res.one_B)
    rep.data["orbits"] = [
        {"base_block": ts.base_block, "R_g": {str(g): Rg[g].size() for g in ts.reps}}
        for ts, Rg, _ in all_R
    ]
    rep.data["block_permutation"] = {
        str(x): {str(g): ts.bar(mul(x, g)) for g in ts.reps} for ts, _, _ in all_R[:1]
        for x in G.elements
    }
    rep.data["orbit_count"] = len(dec)
    return rep
