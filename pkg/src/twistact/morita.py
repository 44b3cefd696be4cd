"""The Morita context between A *_alpha G and B *_beta G.

Everything lives inside the crossed product of the global action on F:
R = A * G sits in it through a_g d_g -> phi(a_g) d_g, R' = B * G, and

    M = {sum c_g d_g : c_g in phi(A)},   N = {sum c_g d_g : c_g in beta_g(phi(A))}.

The pairings are multiplication, so they are onto exactly when the
additive span of the products M N is R and that of N M is R'. Tensor
products are never formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .crossed import CrossedElement, cp_mul, monomial
from .crossed import spanning_set as crossed_spanning_set
from .globalization import GlobalizationResult
from .report import Report
from .span import ResidueSpan


class ClosureFailure(ValueError):
    def __init__(self, report):
        self.report = report
        first = report.failures()[0]
        super().__init__(f"{first.name} fails: {first.witness}")


@dataclass
class MoritaContext:
    glob: GlobalizationResult
    R_gens: list
    Rp_gens: list
    M_gens: list
    N_gens: list
    report: Report = field(default_factory=lambda: Report("morita"))

    @property
    def moduli(self):
        return self.glob.F.vector_moduli() * self.glob.group.order

    def span(self, elems) -> ResidueSpan:
        return ResidueSpan(self.moduli, [e.vector() for e in elems])


def embed(glob: GlobalizationResult, x: CrossedElement) -> CrossedElement:
    """a_g d_g -> phi(a_g) d_g."""
    return CrossedElement(glob.beta, tuple(glob.phi(c) for c in x.coeffs))


def _products(xs, ys):
    return [cp_mul(x, y) for x, y in product(xs, ys)]


def build_context(tpa, glob: GlobalizationResult, check=True, n_elements=None) -> MoritaContext:
    """Generators of R, R', M, N and the closure checks.

    ``n_elements`` restricts the group elements used for N; it exists to
    build deliberately incomplete contexts.
    """
    G, beta, F = tpa.group, glob.beta, glob.F
    A = tpa.ring
    R_gens = [embed(glob, x) for x in crossed_spanning_set(tpa)]
    B_basis = [F.from_vector(v) for v in glob.B.basis()]
    Rp_gens = [monomial(beta, b, g) for g in G.elements for b in B_basis]
    M_gens = [monomial(beta, glob.phi(a), g) for g in G.elements for a in A.spanning_set()]
    n_elements = G.elements if n_elements is None else n_elements
    N_gens = [monomial(beta, beta.act(g, glob.phi(a)), g) for g in n_elements
              for a in A.spanning_set()]
    ctx = MoritaContext(glob, R_gens, Rp_gens, M_gens, N_gens)
    rep = ctx.report

    src = crossed_spanning_set(tpa)
    for x, y in product(src, repeat=2):
        ok = embed(glob, cp_mul(x, y)) == cp_mul(embed(glob, x), embed(glob, y))
        if not rep.record("R-subring", "a_g d_g -> phi(a_g) d_g is multiplicative", ok,
                          {"x": repr(x), "y": repr(y)}):
            break

    Rp = ctx.span(Rp_gens)
    M, N, R = ctx.span(M_gens), ctx.span(N_gens), ctx.span(R_gens)
    rep.record("R-in-Rp", "R is a subring of R'", R.issubset(Rp))
    rep.record("M-in-Rp", "M lies in R'", M.issubset(Rp))
    rep.record("N-in-Rp", "N lies in R'", N.issubset(Rp))
    for name, left, right, target in (("RM", R_gens, M_gens, M), ("MRp", M_gens, Rp_gens, M),
                                      ("RpN", Rp_gens, N_gens, N), ("NR", N_gens, R_gens, N)):
        for x, y in product(left, right):
            z = cp_mul(x, y)
            if not rep.record(f"closure-{name}", "bimodule closure on generators",
                              z.vector() in target, {"x": repr(x), "y": repr(y), "product": repr(z)}):
                break
    rep.data["log2|R|"] = R.log2_size()
    rep.data["log2|R'|"] = Rp.log2_size()
    if check and not rep.passed:
        raise ClosureFailure(rep)
    return ctx


def verify_surjectivity(ctx: MoritaContext) -> Report:
    rep = Report("morita")
    rep.extend(ctx.report)
    R, Rp = ctx.span(ctx.R_gens), ctx.span(ctx.Rp_gens)
    MN = ctx.span(_products(ctx.M_gens, ctx.N_gens))
    NM = ctx.span(_products(ctx.N_gens, ctx.M_gens))
    for name, got, want, gens in (("tau", MN, R, ctx.R_gens), ("tau-prime", NM, Rp, ctx.Rp_gens)):
        missing = next((x for x in gens if x.vector() not in got), None)
        ok = got == want
        rep.record(name, "span(M N) = R" if name == "tau" else "span(N M) = R'", ok,
                   {"missing": repr(missing) if missing is not None else None,
                    "|span|": got.size(), "|target|": want.size()})
    RR = ctx.span(_products(ctx.R_gens, ctx.R_gens))
    RpRp = ctx.span(_products(ctx.Rp_gens, ctx.Rp_gens))
    rep.record("R-idempotent", "R = R R", RR == R)
    rep.record("Rp-idempotent", "R' = R' R'", RpRp == Rp)
    rep.data["|R|"] = R.size()
    rep.data["|R'|"] = Rp.size()
    return rep
