"""Comparing two globalizations of one action: isomorphism and equivalence.

Isomorphism needs a ring isomorphism phi: B_1 -> B_2 with phi phi_1 = phi_2
that intertwines the beta's and carries u_1 to u_2. Such a phi is forced on
the generators beta_1,x(phi_1(a)) -> beta_2,x(phi_2(a)); it exists as an
additive map exactly when the graph of this assignment meets 0 + B_2 only
in zero, which is decided by linear algebra over the residue rings.

Two globalizations always agree after corestriction: conjugating beta_i by
units eta_i of B_i built from u_i along a transversal gives twists u'_i that
restrict to phi_i of the same w_hat, and then the isomorphism test applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .action import TwistedPartialAction, same_data
from .corestriction import (EquivalenceWitness, apply_epsilon, corestriction_data,
                            make_witness)
from .globalization import GlobalizationResult
from .orbits import structures
from .report import Report
from .rings import RingElement, try_invert
from .span import ResidueSpan


class NotSameAction(ValueError):
    pass


@dataclass
class CounterExample:
    stage: str
    witness: object
    report: Report

    def __bool__(self):
        return False


Failure = CounterExample


@dataclass
class GlobalizationIso:
    g1: GlobalizationResult
    g2: GlobalizationResult
    graph: ResidueSpan
    report: Report

    def __bool__(self):
        return self.report.passed

    def apply(self, b: RingElement) -> RingElement:
        """phi(b) for b in B_1."""
        n1 = len(b.vector())
        rem = self.graph.remainder(b.vector() + [0] * len(self.g2.F.vector_moduli()))
        if any(rem[:n1]):
            raise ValueError("element is not in B_1")
        return -self.g2.F.from_vector(rem[n1:])

    @property
    def certified(self):
        return {c.name: c.passed for c in self.report.checks}


@dataclass
class GlobalEquivalenceWitness:
    iso: GlobalizationIso
    epsilon: tuple  # units of B_2, one per group element
    eta: dict = field(default_factory=dict)  # i -> tuple of eta_(i,x)
    u_prime: dict = field(default_factory=dict)  # i -> {(x,y): u'_i[x,y]}
    report: Report = None

    def __bool__(self):
        return self.report is None or self.report.passed


def _require_same_setting(t1: TwistedPartialAction, t2: TwistedPartialAction):
    if t1.group != t2.group or t1.ring != t2.ring or t1.D != t2.D:
        raise NotSameAction("globalizations of actions on different groups, rings or domains")


def sametildew(g1: GlobalizationResult, g2: GlobalizationResult, rep: Report):
    """phi_1^-1(u_1 phi_1(1)) = phi_2^-1(u_2 phi_2(1)) for all pairs; first failing pair or None."""
    G = g1.group
    one = g1.action.ring.one()
    first = None
    for x, y in product(G.elements, repeat=2):
        a = g1.phi_inv(g1.u(x, y) * g1.phi(one))
        b = g2.phi_inv(g2.u(x, y) * g2.phi(one))
        ok = rep.record("sametildew", "phi_1^-1(u_1[x,y] phi_1(1)) = phi_2^-1(u_2[x,y] phi_2(1))",
                        a == b, {"x": x, "y": y, "lhs": a, "rhs": b})
        if not ok and first is None:
            first = (x, y)
    return first


def try_isomorphic(g1: GlobalizationResult, g2: GlobalizationResult):
    """A certified GlobalizationIso, or a CounterExample naming the failed stage."""
    _require_same_setting(g1.action, g2.action)
    rep = Report("compare")
    first = sametildew(g1, g2, rep)
    if first is not None:
        return CounterExample("sametildew", {"x": first[0], "y": first[1]}, rep)

    G, A = g1.group, g1.action.ring
    F1, F2 = g1.F, g2.F
    mod = F1.vector_moduli() + F2.vector_moduli()
    graph = ResidueSpan(mod)
    for x in G.elements:
        for a in A.spanning_set():
            graph.add(g1.act(x, g1.phi(a)).vector() + g2.act(x, g2.phi(a)).vector())
    size = graph.size()
    rep.record("well-defined", "generator relations of B_1 hold in B_2", size == g1.size(),
               {"|graph|": size, "|B_1|": g1.size()})
    rep.record("bijective", "the map is onto B_2 and injective", size == g2.size(),
               {"|graph|": size, "|B_2|": g2.size()})
    iso = GlobalizationIso(g1, g2, graph, rep)
    if not rep.passed:
        return CounterExample("well-defined", {"|graph|": size, "|B_1|": g1.size(),
                                               "|B_2|": g2.size()}, rep)

    basis = g1.B_basis()
    images = [iso.apply(b) for b in basis]
    for (b, pb), (c, pc) in product(zip(basis, images), repeat=2):
        if not rep.record("ring-hom", "phi(bc) = phi(b) phi(c)", iso.apply(b * c) == pb * pc,
                          {"b": b, "c": c}):
            break
    for x in G.elements:
        for b, pb in zip(basis, images):
            if not rep.record("intertwine", "phi beta_1,x = beta_2,x phi",
                              iso.apply(g1.act(x, b)) == g2.act(x, pb), {"x": x, "b": b}):
                break
    for x, y in product(G.elements, repeat=2):
        u1, u2 = g1.u(x, y), g2.u(x, y)
        for b, pb in zip(basis, images):
            ok = iso.apply(u1 * b) == u2 * pb and iso.apply(b * u1) == pb * u2
            if not rep.record("twist", "phi(u_1 b) = u_2 phi(b) and phi(b u_1) = phi(b) u_2", ok,
                              {"x": x, "y": y, "b": b}):
                break
    for a in A.spanning_set():
        rep.record("phi-compatible", "phi phi_1 = phi_2", iso.apply(g1.phi(a)) == g2.phi(a), {"a": a})
    if not rep.passed:
        return CounterExample(rep.failures()[0].name, rep.failures()[0].witness, rep)
    return iso


# -- equivalence ---------------------------------------------------------


def global_corestriction(g: GlobalizationResult, sts):
    """eta_x and u'[x,y] inside B, summed over the blocks R_g of every orbit."""
    tpa, G = g.action, g.group
    A = tpa.ring
    inv, mul = G.inv, G.mul
    F = g.F
    eta, up = {}, {}
    e1 = {ts.base_block: g.phi(A.idempotent({ts.base_block})) for ts in sts}
    for x in G.elements:
        total = F.zero()
        for ts in sts:
            for h in ts.reps:
                k = ts.bar(mul(inv(x), h))
                first = mul(mul(inv(h), x), k)
                val = g.u(inv(h), x) * try_invert(g.u(first, inv(k))) * e1[ts.base_block]
                total = total + g.act_inv(inv(h), val)
        eta[x] = total
    for x, y in product(G.elements, repeat=2):
        total = F.zero()
        for ts in sts:
            for h in ts.reps:
                k = ts.bar(mul(inv(x), h))
                m = ts.bar(mul(inv(y), mul(inv(x), h)))
                first = mul(mul(inv(h), x), k)
                second = mul(mul(inv(k), y), m)
                total = total + g.act_inv(inv(h), g.u(first, second) * e1[ts.base_block])
        up[(x, y)] = total
    return eta, up


def corestricted_globalization(g: GlobalizationResult, sts, rep: Report, label):
    """beta'_x = eta_x^-1 beta_x eta_x on B, extended by the identity off B."""
    tpa, G, F = g.action, g.group, g.F
    eta, up = global_corestriction(g, sts)
    pad = F.one() - g.one_B
    delta = []
    for x in G.elements:
        in_b = g.in_B(eta[x])
        try:
            e_inv = g.invert_in_B(eta[x])
            unit = e_inv * eta[x] == g.one_B
        except ArithmeticError:
            e_inv, unit = None, False
        rep.record(f"{label}/eta-unit", "eta_x is a unit of B", in_b and unit, {"x": x})
        if not (in_b and unit):
            return None, eta, up
        delta.append(e_inv + pad)
    beta_p = apply_epsilon(g.beta, EquivalenceWitness(tuple(delta)))
    for key in up:
        rep.record(f"{label}/u-prime", "eta-transform of u restricted to B is u'",
                   beta_p.w[key] * g.one_B == up[key], {"pair": key})
    new = GlobalizationResult(tpa, None, F, beta_p, g.embedding, g.B_gens, g.B, g.one_B,
                              g.base_blocks, g.reps, name=f"{g.name}'")
    return new, eta, up


def check_global_equivalence(g1, g2, iso: GlobalizationIso, eps) -> Report:
    """phi beta_1,x phi^-1 = eps_x beta_2,x eps_x^-1 and phi(u_1) = eps_x beta_2,x(eps_y) u_2 eps_xy^-1 on B_2."""
    rep = Report("equivalent")
    G = g1.group
    basis1 = g1.B_basis()
    one2 = g2.one_B
    eps_inv = {}
    for x in G.elements:
        ok = g2.in_B(eps[x])
        try:
            eps_inv[x] = g2.invert_in_B(eps[x])
            ok = ok and eps_inv[x] * eps[x] == one2
        except ArithmeticError:
            ok = False
        rep.record("epsilon-unit", "eps_x is a unit of B_2", ok, {"x": x})
    if not rep.passed:
        return rep
    for x in G.elements:
        for b in basis1:
            lhs = iso.apply(g1.act(x, b))
            rhs = eps[x] * g2.act(x, iso.apply(b)) * eps_inv[x]
            if not rep.record("alpha2", "phi beta_1,x phi^-1 = eps_x beta_2,x eps_x^-1", lhs == rhs,
                              {"x": x, "b": b}):
                break
    for x, y in product(G.elements, repeat=2):
        xy = G.mul(x, y)
        lhs = iso.apply(g1.u(x, y) * g1.one_B)
        rhs = eps[x] * g2.act(x, eps[y]) * g2.u(x, y) * eps_inv[xy] * one2
        rep.record("w2", "phi(u_1[x,y]) = eps_x beta_2,x(eps_y) u_2[x,y] eps_xy^-1", lhs == rhs,
                   {"x": x, "y": y, "lhs": lhs, "rhs": rhs})
    for a in g1.action.ring.spanning_set():
        rep.record("phi-compatible", "phi phi_1 = phi_2", iso.apply(g1.phi(a)) == g2.phi(a), {"a": a})
    return rep


def transport_globalization(g: GlobalizationResult, eps) -> GlobalizationResult:
    """A globalization of apply_epsilon(g.action, eps) on the same B.

    eps is lifted to E_x = phi(eps_x) + 1 - phi(1_x) and the global action
    is transformed by E.
    """
    tpa = g.action
    eps = eps if isinstance(eps, EquivalenceWitness) else make_witness(tpa, eps)
    new_tpa = apply_epsilon(tpa, eps)
    F = g.F
    lifted = tuple(g.phi(eps[x]) + F.one() - g.phi(tpa.one(x)) for x in tpa.group.elements)
    beta = apply_epsilon(g.beta, EquivalenceWitness(lifted))
    return GlobalizationResult(new_tpa, None, F, beta, g.embedding, g.B_gens, g.B, g.one_B,
                               g.base_blocks, g.reps, name=f"{g.name} transported")


def find_action_witness(t1: TwistedPartialAction, t2: TwistedPartialAction, cap=20000):
    """Search for eps carrying t1 to t2 (unit families up to ``cap``)."""
    G = t1.group
    choices, total = [], 1
    for x in G.elements:
        units = t1.ring.units(t1.D[x]) if x != G.identity else [t1.ring.one()]
        choices.append(units)
        total *= len(units)
        if total > cap:
            return None
    for combo in product(*choices):
        try:
            cand = apply_epsilon(t1, EquivalenceWitness(tuple(combo)))
        except Exception:
            continue
        if same_data(cand, t2):
            return EquivalenceWitness(tuple(combo))
    return None


def _same_action_pipeline(g1, g2, rep, sts=None):
    tpa = g1.action
    sts = sts if sts is not None else structures(tpa, g1.base_blocks, g1.reps)
    _, w_hat = corestriction_data(tpa, sts, over="transversal")
    primes, etas, ups = [], {}, {}
    for i, g in ((1, g1), (2, g2)):
        gp, eta, up = corestricted_globalization(g, sts, rep, f"beta{i}")
        etas[i], ups[i] = eta, up
        if gp is None:
            return CounterExample(f"beta{i}/eta-unit", rep.failures()[0].witness, rep)
        one = g.phi(tpa.ring.one())
        for key in up:
            rep.record(f"beta{i}/sametildew2", "u'_i[x,y] phi_i(1) = phi_i(w_hat[x,y])",
                       up[key] * one == g.phi(w_hat[key]), {"pair": key})
        primes.append(gp)
    if not rep.passed:
        f = rep.failures()[0]
        return CounterExample(f.name, f.witness, rep)
    iso = try_isomorphic(primes[0], primes[1])
    if not iso:
        rep.extend(iso.report, prefix="corestricted/")
        return CounterExample(f"corestricted/{iso.stage}", iso.witness, rep)
    rep.extend(iso.report, prefix="corestricted/")
    G = tpa.group
    eps = tuple(iso.apply(etas[1][x]) * g2.invert_in_B(etas[2][x]) for x in G.elements)
    final = GlobalizationIso(g1, g2, iso.graph, iso.report)
    return GlobalEquivalenceWitness(final, eps, {i: tuple(etas[i][x] for x in G.elements) for i in etas},
                                    ups, rep)


def try_equivalent(g1: GlobalizationResult, g2: GlobalizationResult, eps=None):
    """Equivalence of two globalizations; a witness or a CounterExample.

    When the two globalize different but equivalent actions, ``eps``
    (a witness carrying g1.action to g2.action) is used, or searched for
    when the unit groups are small.
    """
    t1, t2 = g1.action, g2.action
    _require_same_setting(t1, t2)
    rep = Report("compare")
    target = g2
    if not same_data(t1, t2):
        if eps is None:
            eps = find_action_witness(t1, t2)
        if eps is None:
            rep.record("action-witness", "the two actions are equivalent", False, "no witness found")
            return CounterExample("action-witness", None, rep)
        eps = eps if isinstance(eps, EquivalenceWitness) else make_witness(t1, eps)
        rep.record("action-witness", "eps carries action 1 to action 2",
                   same_data(apply_epsilon(t1, eps), t2))
        if not rep.passed:
            return CounterExample("action-witness", None, rep)
        target = transport_globalization(g2, eps.inverse(t1))
        rep.record("transport-back", "transporting back recovers action 1", same_data(target.action, t1))
    res = _same_action_pipeline(g1, target, rep)
    if not res:
        return res
    if target is not g2:
        # target's beta is the E-transform of g2's, E lifting eps^-1
        lifted = [g2.phi(e) + g2.F.one() - g2.phi(t2.one(x))
                  for x, e in enumerate(eps.inverse(t1).epsilon)]
        res.epsilon = tuple(k * (l * g2.one_B) for k, l in zip(res.epsilon, lifted))
        res.iso = GlobalizationIso(g1, g2, res.iso.graph, res.iso.report)
    final = check_global_equivalence(g1, g2, res.iso, res.epsilon)
    rep.extend(final, prefix="final/")
    res.report = rep
    if not final.passed:
        f = final.failures()[0]
        return CounterExample(f"final/{f.name}", f.witness, rep)
    return res
