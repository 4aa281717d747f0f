"""The builtin law library.

Each :class:`Law` is a universally quantified statement: hypotheses, then a
conclusion, over element variables (a, b, c, d) and test variables (p, q, r).
Laws with polarity ``must-fail`` are known non-theorems; the search is
expected to find a counterexample for them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .expr import (
    ONE,
    TONE,
    TOP,
    TZERO,
    ZERO,
    And,
    Condition,
    Eq,
    Forall,
    Iff,
    Implies,
    Leq,
    Not,
    Pred,
    merge_sorts,
    bbox,
    bdia,
    conv,
    div,
    dom,
    elem,
    embed,
    fbox,
    fdia,
    maxpart,
    minpart,
    mu_h,
    nrm,
    nu_h,
    omega,
    plus,
    render,
    star,
    test,
)

MUST_HOLD = "must-hold"
MUST_FAIL = "must-fail"

ALL_MODELS = ("rel", "lang", "path")
SUITES = ("core", "termination", "divergence", "omega", "rewriting", "counterexamples")


@dataclass(frozen=True)
class Fixture:
    """A pinned assignment, given as a model descriptor and encoded values."""

    model: dict
    assignment: dict


@dataclass(frozen=True)
class Law:
    name: str
    citation: str
    conclusion: Condition
    hypotheses: tuple = ()
    polarity: str = MUST_HOLD
    models: tuple = ("rel",)
    suites: tuple = ("core",)
    generator: Optional[str] = None
    fixtures: tuple = ()

    def __post_init__(self):
        if self.polarity not in (MUST_HOLD, MUST_FAIL):
            raise ValueError(f"bad polarity {self.polarity!r}")
        self.sorts  # sort consistency check

    @property
    def sorts(self) -> dict[str, str]:
        """Free variables with their sorts, elements first, then by name."""
        out = merge_sorts(*(c.free_vars() for c in (*self.hypotheses, self.conclusion)))
        return dict(sorted(out.items(), key=lambda kv: (kv[1] != "elem", kv[0])))

    def statement(self) -> str:
        concl = render(self.conclusion)
        if not self.hypotheses:
            return concl
        return ", ".join(render(h) for h in self.hypotheses) + " ⇒ " + concl

    def __str__(self):
        return self.statement()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "citation": self.citation,
            "sorts": self.sorts,
            "hypotheses": [render(h) for h in self.hypotheses],
            "conclusion": render(self.conclusion),
            "polarity": self.polarity,
            "applicability": list(self.models),
            "suites": list(self.suites),
        }


# ---------------------------------------------------------------------------
# generator hooks for rare hypotheses
# ---------------------------------------------------------------------------


def _acyclic(model, rng):
    from ..rel import FiniteRelation

    n = model.n
    order = rng.permutation(n)
    upper = np.triu(rng.random((n, n)) < 0.4, k=1)
    pairs = [(int(order[x]), int(order[y])) for x, y in zip(*np.nonzero(upper))]
    return FiniteRelation.of(n, pairs)


def _gen_acyclic_a(model, rng, sorts):
    # the other elements are sparse so that commutation hypotheses are not rare
    out = {}
    for name, sort in sorts.items():
        if name == "a" and model.kind == "rel":
            out[name] = _acyclic(model, rng)
        elif sort == "elem":
            out[name] = model.random_element(rng, density=0.1)
        else:
            out[name] = model.random_test(rng)
    return out


def _gen_acyclic_sum(model, rng, sorts):
    # split one acyclic relation into a and b so that a+b is Noetherian
    if model.kind != "rel":
        return _gen_acyclic_a(model, rng, sorts)
    from ..rel import FiniteRelation

    whole = _acyclic(model, rng).pairs()
    side = rng.random(len(whole))
    a = [e for e, s in zip(whole, side) if s < 0.6]
    b = [e for e, s in zip(whole, side) if s >= 0.4]
    out = _gen_acyclic_a(model, rng, sorts)
    out["a"] = FiniteRelation.of(model.n, a)
    out["b"] = FiniteRelation.of(model.n, b)
    return out


GENERATORS: dict[str, Callable] = {
    "acyclic-a": _gen_acyclic_a,
    "acyclic-sum": _gen_acyclic_sum,
}


# ---------------------------------------------------------------------------
# the library
# ---------------------------------------------------------------------------

a, b, c, d = (elem(x) for x in "abcd")
p, q, r = (test(x) for x in "pqr")


def N(x):
    return Pred("noetherian", (x,))


def P(name, *args):
    return Pred(name, args)


def _rel2(**assignment):
    return Fixture({"kind": "rel", "states": 2}, assignment)


def _build() -> list[Law]:
    L: list[Law] = []

    def law(name, citation, conclusion, *hyps, **kw):
        L.append(Law(name, citation, conclusion, tuple(hyps), **kw))

    core_all = dict(models=ALL_MODELS, suites=("core",))

    # -- idempotent semiring ----------------------------------------------
    law("add-assoc", "semiring: + is associative", Eq((a + b) + c, a + (b + c)), **core_all)
    law("add-comm", "semiring: + is commutative", Eq(a + b, b + a), **core_all)
    law("add-idem", "semiring: + is idempotent", Eq(a + a, a), **core_all)
    law("add-zero", "semiring: 0 is the unit of +", Eq(a + ZERO, a), **core_all)
    law("mul-assoc", "semiring: · is associative", Eq((a * b) * c, a * (b * c)), **core_all)
    law("mul-one-left", "semiring: 1 is a left unit", Eq(ONE * a, a), **core_all)
    law("mul-one-right", "semiring: 1 is a right unit", Eq(a * ONE, a), **core_all)
    law("zero-left", "semiring: 0 annihilates from the left", Eq(ZERO * a, ZERO), **core_all)
    law("zero-right", "semiring: 0 annihilates from the right", Eq(a * ZERO, ZERO), **core_all)
    law("distrib-left", "semiring: left distributivity", Eq(a * (b + c), a * b + a * c), **core_all)
    law("distrib-right", "semiring: right distributivity", Eq((a + b) * c, a * c + b * c), **core_all)
    law("natural-order", "natural order: a ≤ b iff a+b = b", Iff(Leq(a, b), Eq(a + b, b)), **core_all)

    # -- tests ------------------------------------------------------------
    law("test-complement-sum", "tests: complement joins to 1", Eq(p + ~p, TONE), **core_all)
    law("test-complement-meet", "tests: complement meets to 0", And((Eq(p * ~p, TZERO), Eq(~p * p, TZERO))), **core_all)
    law("test-below-one", "tests lie below 1", Leq(embed(p), ONE), **core_all)
    law("test-meet", "test meet is the product", Eq(embed(p * q), embed(p) * embed(q)), **core_all)
    law("shunting", "shunting rule for tests", Iff(Leq(p * q, r), Leq(p, q >> r)), **core_all)

    # -- modal semiring ---------------------------------------------------
    law("dia1", "demodalisation of the forward diamond",
        Iff(Leq(fdia(a, p), q), Leq(embed(~q) * a * embed(p), ZERO)), **core_all)
    law("dia1-bwd", "demodalisation of the backward diamond",
        Iff(Leq(bdia(a, p), q), Leq(embed(p) * a * embed(~q), ZERO)), **core_all)
    law("dia2", "forward diamond of a product", Eq(fdia(a * b, p), fdia(a, fdia(b, p))), **core_all)
    law("dia2-bwd", "backward diamond of a product", Eq(bdia(a * b, p), bdia(b, bdia(a, p))), **core_all)
    law("box1", "demodalisation of the forward box",
        Iff(Leq(p, fbox(a, q)), Leq(embed(p) * a * embed(~q), ZERO)), **core_all)
    law("box1-bwd", "demodalisation of the backward box",
        Iff(Leq(p, bbox(a, q)), Leq(embed(~q) * a * embed(p), ZERO)), **core_all)
    law("box2", "forward box of a product", Eq(fbox(a * b, p), fbox(a, fbox(b, p))), **core_all)
    law("box2-bwd", "backward box of a product", Eq(bbox(a * b, p), bbox(b, bbox(a, p))), **core_all)
    law("galois", "diamonds are lower adjoints of boxes", Iff(Leq(fdia(a, p), q), Leq(p, bbox(a, q))), **core_all)
    law("galois-bwd", "backward diamond is lower adjoint of the forward box",
        Iff(Leq(bdia(a, p), q), Leq(p, fbox(a, q))), **core_all)
    law("cancel-dia-box", "cancellation ⟨a⟩|a] ≤ 1", Leq(fdia(a, bbox(a, p)), p), **core_all)
    law("cancel-box-dia", "cancellation 1 ≤ |a]⟨a⟩", Leq(p, bbox(a, fdia(a, p))), **core_all)
    law("cancel-bdia-fbox", "cancellation ⟨a|[a⟩ ≤ 1", Leq(bdia(a, fbox(a, p)), p), **core_all)
    law("cancel-fbox-bdia", "cancellation 1 ≤ [a⟩⟨a|", Leq(p, fbox(a, bdia(a, p))), **core_all)
    law("dia-additive", "diamonds are additive", Eq(fdia(a, p + q), fdia(a, p) + fdia(a, q)), **core_all)
    law("bdia-additive", "backward diamonds are additive", Eq(bdia(a, p + q), bdia(a, p) + bdia(a, q)), **core_all)
    law("box-multiplicative", "boxes are multiplicative", Eq(fbox(a, p * q), fbox(a, p) * fbox(a, q)), **core_all)
    law("bbox-multiplicative", "backward boxes are multiplicative",
        Eq(bbox(a, p * q), bbox(a, p) * bbox(a, q)), **core_all)
    law("dia-strict", "diamonds are strict", And((Eq(fdia(a, TZERO), TZERO), Eq(bdia(a, TZERO), TZERO))), **core_all)
    law("box-costrict", "boxes are co-strict", And((Eq(fbox(a, TONE), TONE), Eq(bbox(a, TONE), TONE))), **core_all)
    law("dia-sum", "diamond of a sum", Eq(fdia(a + b, p), fdia(a, p) + fdia(b, p)), **core_all)
    law("bdia-sum", "backward diamond of a sum", Eq(bdia(a + b, p), bdia(a, p) + bdia(b, p)), **core_all)
    law("box-sum", "box of a sum", Eq(fbox(a + b, p), fbox(a, p) * fbox(b, p)), **core_all)
    law("bbox-sum", "backward box of a sum", Eq(bbox(a + b, p), bbox(a, p) * bbox(b, p)), **core_all)
    law("subsub-dia", "additive maps and subtraction", Leq(fdia(a, p) - fdia(a, q), fdia(a, p - q)), **core_all)
    law("subsub-box", "multiplicative maps and implication",
        Leq(fbox(a, p >> q), fbox(a, p) >> fbox(a, q)), **core_all)
    law("varsubsub-dia", "operator-level subtraction under a diamond",
        Leq(fdia(a, fdia(b, p)) - fdia(a, fdia(c, p)), fdia(a, fdia(b, p) - fdia(c, p))), **core_all)
    law("varsubsub-box", "operator-level implication under a box",
        Leq(fbox(a, fdia(b, p) >> fdia(c, p)), fbox(a, fdia(b, p)) >> fbox(a, fdia(c, p))), **core_all)
    law("modoptest-dia", "diamonds of tests are meets",
        And((Eq(fdia(embed(q), p), q * p), Eq(bdia(embed(q), p), q * p))), **core_all)
    law("modoptest-box", "boxes of tests are implications",
        And((Eq(fbox(embed(q), p), q >> p), Eq(bbox(embed(q), p), q >> p))), **core_all)
    law("dia-isotone", "diamonds are isotone in the element", Leq(fdia(a, p), fdia(b, p)), Leq(a, b), **core_all)
    law("box-antitone", "boxes are antitone in the element", Leq(fbox(b, p), fbox(a, p)), Leq(a, b), **core_all)
    law("opalgebra-distrib", "forward diamonds form a semiring: left distributivity",
        Eq(fdia(a, fdia(b, p) + fdia(c, p)), fdia(a, fdia(b, p)) + fdia(a, fdia(c, p))), **core_all)
    law("opalgebra-zero", "forward diamonds form a semiring: zero annihilates",
        Eq(fdia(a, fdia(ZERO, p)), TZERO), **core_all)
    law("co-galois", "co-Galois connection for isotone diamonds f = ⟨c⟩, g = ⟨d⟩",
        Iff(Forall(("p",), Leq(fdia(c, fbox(a, p)), fdia(d, p))),
            Forall(("p",), Leq(fdia(c, p), fdia(d, bdia(a, p))))))

    # -- Kleene star ------------------------------------------------------
    law("star-unfold-left", "star unfold", Leq(ONE + a * star(a), star(a)), **core_all)
    law("star-unfold-right", "star unfold, right", Leq(ONE + star(a) * a, star(a)), **core_all)
    law("star-induct-left", "star induction", Leq(star(a) * b, c), Leq(b + a * c, c), **core_all)
    law("star-induct-right", "star induction, right", Leq(b * star(a), c), Leq(b + c * a, c), **core_all)
    law("star-commute", "a·a* = a*·a", Eq(a * star(a), star(a) * a), **core_all)
    law("plus-def", "transitive closure a⁺ = a·a* = a*·a", And((Eq(plus(a), a * star(a)), Eq(plus(a), star(a) * a))),
        **core_all)
    law("diaind-unfold", "star unfold on diamonds", Eq(p + fdia(a, fdia(star(a), p)), fdia(star(a), p)))
    law("diaind-unfold-right", "star unfold on diamonds, right", Eq(p + fdia(star(a), fdia(a, p)), fdia(star(a), p)))
    law("diaind", "star induction on diamonds", Leq(fdia(star(a), q), p), Leq(q + fdia(a, p), p))
    law("diaind-operator", "operator-level star induction with f = ⟨b⟩, g = ⟨c⟩",
        Forall(("p",), Leq(fdia(star(a), fdia(b, p)), fdia(c, p))),
        Forall(("p",), Leq(fdia(b, p) + fdia(a, fdia(c, p)), fdia(c, p))))
    law("pdlstar", "induction axiom of propositional dynamic logic",
        Leq(fdia(star(a), p) - p, fdia(star(a), fdia(a, p) - p)))

    # -- minimal and maximal parts ----------------------------------------
    law("max-def", "a-maximal part", Eq(maxpart(a, p), p - fdia(a, p)), **core_all)
    law("min-def", "a-minimal part", Eq(minpart(a, p), p - bdia(a, p)), **core_all)
    law("maxprops1", "max of a sum is the meet", Eq(maxpart(a + b, p), maxpart(a, p) * maxpart(b, p)), **core_all)
    law("maxprops2", "max_0 is the identity", Eq(maxpart(ZERO, p), p), **core_all)
    law("maxprops3", "max_1 is zero", Eq(maxpart(ONE, p), TZERO), **core_all)
    law("maxprops4", "max_a⟨a⟩ ≤ ⟨a⟩max_a", Leq(maxpart(a, fdia(a, p)), fdia(a, maxpart(a, p))), **core_all)
    law("maxprops5", "max_a⟨a*⟩ ≤ ⟨a*⟩max_a",
        Leq(maxpart(a, fdia(star(a), p)), fdia(star(a), maxpart(a, p))))
    law("maxprops6", "max is antitone", Leq(maxpart(b, p), maxpart(a, p)), Leq(a, b), **core_all)
    law("maxprops7", "normal forms: max_a 1 = ¬dom a = [a⟩0, m·a = 0, m·a* = m",
        And((Eq(maxpart(a, TONE), ~dom(a)), Eq(maxpart(a, TONE), fbox(a, TZERO)),
             Eq(embed(maxpart(a, TONE)) * a, ZERO),
             Eq(embed(maxpart(a, TONE)) * star(a), embed(maxpart(a, TONE))))), **core_all)
    law("maxprops8", "max_{a*} is zero", Eq(maxpart(star(a), p), TZERO), **core_all)

    # -- Noetherity -------------------------------------------------------
    term = dict(models=ALL_MODELS, suites=("termination",))
    law("noetheraspostfix1", "max_a p ≤ 0 iff p is a post-fixpoint of ⟨a⟩",
        Iff(Leq(maxpart(a, p), TZERO), Leq(p, fdia(a, p))), **term)
    law("noetheraspostfix2", "Noetherian iff 0 is the only post-fixpoint of ⟨a⟩",
        Iff(N(a), Forall(("p",), Implies(Leq(p, fdia(a, p)), Leq(p, TZERO)))), **term)
    law("noetherian-def", "Noetherian: max_a p ≤ 0 implies p ≤ 0",
        Iff(N(a), Forall(("p",), Implies(Leq(maxpart(a, p), TZERO), Leq(p, TZERO)))), **term)
    law("uep1", "μh_p = ⟨a*⟩p", Eq(mu_h(a, p), fdia(star(a), p)), **term)
    law("uep2", "νh_p = μh_p + ν⟨a⟩", Eq(nu_h(a, p), mu_h(a, p) + div(a)), **term)
    law("uep3", "Noetherian a gives h_p a unique fixpoint", Eq(nu_h(a, p), mu_h(a, p)), N(a), **term)
    law("uep4", "unique fixpoints of every h_p give Noetherity", N(a), P("unique_h_fixpoints", a), **term)
    law("noetherprops1", "zero is the only Noetherian test", Eq(p, TZERO), N(embed(p)), **term)
    law("noetherprops1-zero", "zero is Noetherian", N(ZERO), **term)
    law("noetherprops2", "summands of a Noetherian sum are Noetherian", And((N(a), N(b))), N(a + b), **term)
    law("noetherprops3", "Noetherity is downward closed", N(a), N(b), Leq(a, b), **term)
    law("noetherprops4", "a Noetherian iff a⁺ Noetherian", Iff(N(a), N(plus(a))), **term)
    law("star-not-noetherian", "a* is never Noetherian", Not(N(star(a))), **term)

    # -- Löb --------------------------------------------------------------
    law("transitive-d-transitive", "transitivity implies d-transitivity",
        P("d_transitive", a), P("transitive", a), models=("rel", "lang"), suites=("termination",))
    law("loeb-pre-loeb", "Löbian implies pre-Löbian", P("pre_loebian", a), P("loebian", a), **term)
    law("loebpreloeb", "d-transitive: Löbian iff pre-Löbian",
        Iff(P("loebian", a), P("pre_loebian", a)), P("d_transitive", a), **term)
    law("noetherpreloeb", "Noetherian iff pre-Löbian", Iff(N(a), P("pre_loebian", a)), **term)
    law("noetherloeb", "d-transitive: Noetherian iff Löbian", Iff(N(a), P("loebian", a)), P("d_transitive", a), **term)
    law("extensionality", "relations are extensional: ⟨a⟩ ≤ ⟨b⟩ implies a ≤ b",
        Leq(a, b), Forall(("p",), Leq(fdia(a, p), fdia(b, p))), suites=("termination",))

    # -- normaliser -------------------------------------------------------
    law("nrm-zero", "nrm 0 = 1", Eq(nrm(ZERO), ONE), **term)
    law("nrm-total", "dom a = 1 implies nrm a = 0", Eq(nrm(a), ZERO), Eq(dom(a), TONE), **term)
    law("nrm-idempotent", "normalisers are multiplicatively idempotent", Eq(nrm(a) * nrm(a), nrm(a)), **term)
    law("nrm-noetherian", "Noetherian a has dom nrm a = 1", Eq(dom(nrm(a)), TONE), N(a), **term)

    # -- omega ------------------------------------------------------------
    om = dict(models=ALL_MODELS, suites=("omega",))
    law("omega-unfold", "omega unfold", Leq(omega(a), a * omega(a)), **om)
    law("omega-coinduct", "omega co-induction", Leq(c, omega(a) + star(a) * b), Leq(c, a * c + b), **om)
    law("top-greatest", "1^ω is the greatest element", Leq(a, TOP), **om)
    law("dom-top", "dom ⊤ = 1", Eq(dom(TOP), TONE), **om)
    law("noevsonoe1", "Noetherian elements are ω-Noetherian", P("omega_noetherian", a), N(a), **om)
    law("dom-omega-below-div", "dom a^ω ≤ ∇a", Leq(dom(omega(a)), div(a)), **om)
    law("omega-coincide", "in relations dom a^ω = ∇a", Eq(dom(omega(a)), div(a)), suites=("omega",))
    law("omega-top", "in relations a^ω = (∇a)⊤", Eq(omega(a), embed(div(a)) * TOP), suites=("omega",))
    law("domain-top", "a⊤ = (dom a)⊤, the coincidence premise", Eq(a * TOP, embed(dom(a)) * TOP), suites=("omega",))

    # -- divergence -------------------------------------------------------
    dv = dict(models=ALL_MODELS, suites=("divergence",))
    law("div-unfold", "divergence unfold", Leq(div(a), fdia(a, div(a))), **dv)
    law("div-coinduct", "divergence co-induction", Leq(p, div(a)), Leq(p, fdia(a, p)), **dv)
    law("divvsfound", "co-induction with a remainder", Leq(p, div(a) + fdia(star(a), q)), Leq(p, fdia(a, p) + q), **dv)
    law("conv-def", "convergence is the complement of divergence", Eq(conv(a), ~div(a)), **dv)
    law("conv-fix", "convergence is a fixpoint of [a⟩", Eq(fbox(a, conv(a)), conv(a)), **dv)
    law("noetherfoundational1", "Noetherian elements converge", Eq(div(a), TZERO), P("postfix_noetherian", a), **dv)
    law("noetherfoundational2", "convergent elements are Noetherian", P("postfix_noetherian", a), Eq(div(a), TZERO), **dv)
    law("nulem1", "∇0 = 0 and ∇1 = 1", And((Eq(div(ZERO), TZERO), Eq(div(ONE), TONE))), **dv)
    law("nulem2", "∇a = ⟨a⟩∇a", Eq(div(a), fdia(a, div(a))), **dv)
    law("nulem3", "∇a = ⟨a*⟩∇a", Eq(div(a), fdia(star(a), div(a))), **dv)
    law("nulem4", "∇ is isotone", Leq(div(a), div(b)), Leq(a, b), **dv)
    law("nulem5", "∇a = ∇(a⁺)", Eq(div(a), div(plus(a))), **dv)
    law("nulem6", "denesting ∇(a+b)",
        Eq(div(a + b), div(star(a) * b) + fdia(star(star(a) * b), div(a))), suites=("divergence",))
    law("nulem7", "⟨b*⟩∇(b*a) = ∇(b*a)", Eq(fdia(star(b), div(star(b) * a)), div(star(b) * a)),
        suites=("divergence",))

    # -- rewriting --------------------------------------------------------
    rw = dict(suites=("rewriting",))
    law("semiquasiaux", "(a+b)* = a*b* + a*b⁺a(a+b)*",
        Eq(star(a + b), star(a) * star(b) + star(a) * plus(b) * a * star(a + b)), **rw)
    law("liftcommute-star", "lifting ⟨ba⟩ ≤ ⟨ac⟩ to stars",
        Forall(("p",), Leq(fdia(star(b), fdia(a, p)), fdia(a, fdia(star(c), p)))),
        Forall(("p",), Leq(fdia(b * a, p), fdia(a * c, p))), **rw)
    law("liftcommute-plus", "lifting ⟨ba⟩ ≤ ⟨ac⟩ to transitive closures",
        Forall(("p",), Leq(fdia(plus(b), fdia(a, p)), fdia(a, fdia(plus(c), p)))),
        Forall(("p",), Leq(fdia(b * a, p), fdia(a * c, p))), **rw)
    law("local-semi-quasi", "local d-semi-commutation implies d-quasi-commutation",
        P("quasi", a, b), P("local_semi", a, b), **rw)
    law("semiquasinoether", "for Noetherian a: local d-semi ⇔ d-semi ⇔ d-quasi commutation",
        And((Iff(P("local_semi", a, b), P("quasi", a, b)), Iff(P("semi", a, b), P("quasi", a, b)))), N(a),
        generator="acyclic-a", **rw)
    law("badecor", "d-quasi-commutation and Noetherian a make b*a Noetherian",
        N(star(b) * a), N(a), P("quasi", a, b), generator="acyclic-a", **rw)
    law("bade", "union theorem: under d-quasi-commutation a+b is Noetherian iff a and b are",
        Iff(N(a + b), And((N(a), N(b)))), P("quasi", a, b), generator="acyclic-a", **rw)
    law("newman", "Noetherian a+b with local d-commutation d-commutes",
        P("d_commutes", a, b), N(a + b), P("locally_d_commutes", a, b), generator="acyclic-sum", **rw)
    law("d-commutes-local", "d-commutation implies local d-commutation",
        P("locally_d_commutes", a, b), P("d_commutes", a, b), **rw)
    law("semi-local-semi", "d-semi-commutation implies local d-semi-commutation",
        P("local_semi", a, b), P("semi", a, b), **rw)
    law("geach", "Geach equivalences ⟨b⟩[d⟩ ≤ [a⟩⟨c⟩ ⇔ ⟨a|⟨b⟩[d⟩ ≤ ⟨c⟩ ⇔ ⟨a|⟨b⟩ ≤ ⟨c⟩⟨d|",
        And((Iff(Forall(("p",), Leq(fdia(b, fbox(d, p)), fbox(a, fdia(c, p)))),
                 Forall(("p",), Leq(bdia(a, fdia(b, fbox(d, p))), fdia(c, p)))),
             Iff(Forall(("p",), Leq(bdia(a, fdia(b, fbox(d, p))), fdia(c, p))),
                 Forall(("p",), Leq(bdia(a, fdia(b, p)), fdia(c, bdia(d, p))))))), **rw)
    law("test-d-deterministic", "every test is d-deterministic", P("d_deterministic", embed(p)), **rw)
    law("d-deterministic-box", "d-deterministic iff ⟨a⟩ ≤ [a⟩",
        Iff(P("d_deterministic", a), Forall(("p",), Leq(fdia(a, p), fbox(a, p)))), **rw)
    law("norm-d-confluent", "the normaliser of a d-confluent element is d-deterministic",
        P("d_deterministic", nrm(a)), P("d_confluent", a), **rw)

    # -- expected counterexamples -----------------------------------------
    cx = dict(polarity=MUST_FAIL, suites=("counterexamples",))
    law("sum-of-noetherians-is-noetherian", "converse of noetherprops2 fails: {(1,2)} and {(2,1)}",
        N(a + b), N(a), N(b), models=ALL_MODELS, fixtures=(_rel2(a=[[0, 1]], b=[[1, 0]]),), **cx)
    law("omega-noetherian-is-noetherian", "ω-Noetherian elements need not be Noetherian (languages)",
        N(a), P("omega_noetherian", a), models=("lang",),
        fixtures=(Fixture({"kind": "lang", "alphabet": "ab", "bound": 2}, {"a": ["b"]}),), **cx)
    law("dom-nrm-implies-noetherian", "dom nrm a = 1 does not give Noetherity: {(A,A),(A,B)}",
        N(a), Eq(dom(nrm(a)), TONE), models=ALL_MODELS,
        fixtures=(_rel2(a=[[0, 0], [0, 1]]),), **cx)
    law("newman-weakened", "separately Noetherian a, b with local d-commutation need not d-commute",
        P("d_commutes", a, b), N(a), N(b), P("locally_d_commutes", a, b),
        fixtures=(Fixture({"kind": "rel", "states": 4}, {"a": [[1, 2], [2, 3]], "b": [[1, 0], [2, 1]]}),), **cx)
    law("d-transitive-is-transitive", "d-transitivity does not imply transitivity in paths",
        P("transitive", a), P("d_transitive", a), models=("path",),
        fixtures=(Fixture({"kind": "path", "nodes": 1, "bound": 3}, {"a": [[0, 0]]}),), **cx)
    law("path-extensionality", "path semirings are not extensional",
        Leq(a, b), Forall(("p",), Leq(fdia(a, p), fdia(b, p))), models=("path",),
        fixtures=(Fixture({"kind": "path", "nodes": 1, "bound": 3}, {"a": [[0, 0]], "b": [[0]]}),), **cx)
    return L


_LIBRARY = _build()
_BY_NAME = {law.name: law for law in _LIBRARY}
assert len(_BY_NAME) == len(_LIBRARY), "duplicate law names"


def builtin_library() -> list[Law]:
    return list(_LIBRARY)


def lookup(name: str) -> Law:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"no law named {name!r}") from None


def suite(name: str) -> list[Law]:
    if name == "all":
        return builtin_library()
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return [law for law in _LIBRARY if name in law.suites]


def export_json(laws=None) -> str:
    laws = _LIBRARY if laws is None else laws
    return json.dumps([law.to_dict() for law in laws], indent=2, sort_keys=True, ensure_ascii=False)
