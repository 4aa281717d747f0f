"""Termination notions: divergence, Noetherity, Löb properties, normal forms.

Divergence is the greatest fixpoint of the forward diamond, so Noetherity is
decided by a fixpoint iteration over the test lattice.  For relations an
independent graph oracle (strongly connected components) gives ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import networkx as nx

from .algebra import (
    check_testspace,
    domain,
    fbox_op,
    fdia_op,
    gfp,
    lfp,
    max_op,
    transformer_leq,
)
from .errors import AlgebraError, UnsupportedOperation
from .rel import FiniteRelation, StateSet


class _Unsupported:
    """Marker for report fields the model cannot compute."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNSUPPORTED"

    def __bool__(self):
        raise TypeError("UNSUPPORTED has no truth value")


UNSUPPORTED = _Unsupported()


def divergence(a):
    """States from which an infinite a-chain starts (gfp of ⟨a⟩)."""
    return gfp(fdia_op(a))


def convergence(a):
    """Complement of divergence; cross-checked against the lfp of [a⟩."""
    m = a.model
    out = m.test_not(divergence(a))
    halting = lfp(fbox_op(a))
    if halting != out:
        raise AlgebraError(f"convergence {out!r} differs from least fixpoint of the box {halting!r}")
    return out


def is_noetherian(a) -> bool:
    return divergence(a) == a.model.test_zero


def postfix_noetherian(a) -> bool:
    """Noetherity by definition: zero is the only test with p <= ⟨a⟩p."""
    m = a.model
    check_testspace(m)
    return not any(p != m.test_zero and m.test_leq(p, m.fdia(a, p)) for p in m.tests())


def is_omega_noetherian(a) -> bool:
    m = a.model
    if not m.has_omega:
        raise UnsupportedOperation(f"{m.kind} model has no omega operator")
    return m.omega(a) == m.zero


def _plus_op(a):
    # operator-level ⟨a⟩⁺ = ⟨a⟩⟨a*⟩
    return fdia_op(a) * fdia_op(a.model.star(a))


def is_pre_loebian(a) -> bool:
    """⟨a⟩ <= ⟨a⟩⁺ max_a on every test (no atom shortcut: max_a is not additive)."""
    return transformer_leq(fdia_op(a), _plus_op(a) * max_op(a))


def is_loebian(a) -> bool:
    return transformer_leq(fdia_op(a), fdia_op(a) * max_op(a))


def is_d_transitive(a) -> bool:
    f = fdia_op(a)
    return transformer_leq(f * f, f)


def normal_forms(a):
    """``max_a 1 = ¬dom a``, checked to satisfy m·a = 0 and m·a* = m."""
    m = a.model
    nf = m.test_not(domain(a))
    e = m.embed(nf)
    if m.mul(e, a) != m.zero or m.mul(e, m.star(a)) != e:
        raise AlgebraError(f"normal forms {nf!r} of {a!r} fail m·a = 0 or m·a* = m")
    return nf


def normaliser(a):
    """a* restricted to end in a normal form: ``a*·¬dom a``."""
    m = a.model
    return m.mul(m.star(a), m.embed(m.test_not(domain(a))))


# ---------------------------------------------------------------------------
# graph oracles (relations only)
# ---------------------------------------------------------------------------


def _graph(a: FiniteRelation) -> nx.DiGraph:
    if not isinstance(a, FiniteRelation):
        raise TypeError("graph oracles apply to finite relations only")
    g = nx.DiGraph()
    g.add_nodes_from(range(a.n))
    g.add_edges_from(a.pairs())
    return g


def divergence_oracle(a: FiniteRelation) -> StateSet:
    """States with a path into a cycle (a nontrivial SCC or a self-loop)."""
    g = _graph(a)
    cyclic = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(v, v) for v in comp):
            cyclic |= comp
    reach = set(cyclic)
    for v in cyclic:
        reach |= nx.ancestors(g, v)
    return StateSet.of(a.n, reach)


def noetherian_oracle(a: FiniteRelation) -> bool:
    return nx.is_directed_acyclic_graph(_graph(a))


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TerminationReport:
    noetherian: bool
    divergence: Any
    convergence: Any
    omega_empty: Any  # bool or UNSUPPORTED
    normal_forms: Any
    pre_loebian: bool
    loebian: bool
    d_transitive: bool

    def validate(self, model) -> None:
        zero = model.test_zero
        if self.noetherian != (self.divergence == zero):
            raise AlgebraError("noetherian disagrees with divergence = 0")
        if self.noetherian != self.pre_loebian:
            raise AlgebraError("noetherian disagrees with pre-Löbian")
        if self.convergence != model.test_not(self.divergence):
            raise AlgebraError("convergence is not the complement of divergence")
        if self.d_transitive and self.loebian != self.pre_loebian:
            raise AlgebraError("d-transitive element with Löbian != pre-Löbian")


def analyze(a) -> TerminationReport:
    m = a.model
    try:
        omega_empty = is_omega_noetherian(a)
    except UnsupportedOperation:
        omega_empty = UNSUPPORTED
    div = divergence(a)
    report = TerminationReport(
        noetherian=div == m.test_zero,
        divergence=div,
        convergence=convergence(a),
        omega_empty=omega_empty,
        normal_forms=normal_forms(a),
        pre_loebian=is_pre_loebian(a),
        loebian=is_loebian(a),
        d_transitive=is_d_transitive(a),
    )
    if report.normal_forms != m.test_not(domain(a)):
        raise AlgebraError("normal forms differ from ¬dom a")
    report.validate(m)
    return report
