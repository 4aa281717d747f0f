"""Commutation and confluence of pairs of elements, stated on diamonds.

Every predicate here compares two compositions of diamonds, which are
additive, so checking atoms suffices.  A failed check reports the smallest
violating atom together with both sides evaluated on it.

:func:`sweep_pairs` evaluates the same predicates over whole batches of
relations with the kernels in :mod:`katd.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import kernels
from .algebra import (
    TestTransformer,
    bdia_op,
    check_testspace,
    fbox_op,
    fdia_op,
    identity_op,
    model_of,
    test_op,
    transformer_counterexample,
    transformer_leq,
)
from .errors import AlgebraError, CapExceeded
from .termination import is_noetherian, normaliser


@dataclass(frozen=True)
class Witness:
    """An atom q with lhs(q) not below rhs(q)."""

    atom: Any
    lhs: Any
    rhs: Any


def _check(lhs: TestTransformer, rhs: TestTransformer) -> Optional[Witness]:
    assert lhs.additive and rhs.additive
    q = transformer_counterexample(lhs, rhs)
    return None if q is None else Witness(q, lhs(q), rhs(q))


class _Ops:
    """The diamonds of a and b that the predicates are built from."""

    def __init__(self, a, b):
        m = model_of(a, b)
        self.model = m
        self.a, self.b = a, b
        self.fa = fdia_op(a)
        self.fb = fdia_op(b)
        self.fa_star = fdia_op(m.star(a))
        self.fb_star = fdia_op(m.star(b))
        self.fa_plus = self.fa * self.fa_star
        self.fab_star = fdia_op(m.star(m.add(a, b)))
        self.bb = bdia_op(b)
        self.bb_star = bdia_op(m.star(b))


# each predicate: (lhs, rhs) from _Ops


def _local_semi(o):
    return o.fb * o.fa, o.fa_plus * o.fb_star


def _semi(o):
    return o.fb_star * o.fa, o.fa_plus * o.fb_star


def _quasi(o):
    return o.fb * o.fa, o.fa * o.fab_star


def _local_dc(o):
    return o.bb * o.fa, o.fa_star * o.bb_star


def _dc(o):
    return o.bb_star * o.fa_star, o.fa_star * o.bb_star


def _witness(pred, a, b):
    return _check(*pred(_Ops(a, b)))


def locally_d_semi_commutes_witness(a, b):
    return _witness(_local_semi, a, b)


def d_semi_commutes_witness(a, b):
    return _witness(_semi, a, b)


def d_quasi_commutes_witness(a, b):
    return _witness(_quasi, a, b)


def locally_d_commutes_witness(a, b):
    return _witness(_local_dc, a, b)


def d_commutes_witness(a, b):
    return _witness(_dc, a, b)


def locally_d_semi_commutes(a, b) -> bool:
    """⟨b⟩⟨a⟩ <= ⟨a⟩⁺⟨b*⟩."""
    return locally_d_semi_commutes_witness(a, b) is None


def d_semi_commutes(a, b) -> bool:
    """⟨b*⟩⟨a⟩ <= ⟨a⟩⁺⟨b*⟩."""
    return d_semi_commutes_witness(a, b) is None


def d_quasi_commutes(a, b) -> bool:
    """a d-quasi-commutes over b: ⟨b⟩⟨a⟩ <= ⟨a⟩⟨(a+b)*⟩."""
    return d_quasi_commutes_witness(a, b) is None


def locally_d_commutes(a, b) -> bool:
    """⟨b|⟨a⟩ <= ⟨a*⟩⟨b*|: every local peak closes."""
    return locally_d_commutes_witness(a, b) is None


def d_commutes(a, b) -> bool:
    """⟨b*|⟨a*⟩ <= ⟨a*⟩⟨b*|."""
    return d_commutes_witness(a, b) is None


def is_d_deterministic(a) -> bool:
    """⟨a|⟨a⟩ <= 1, cross-checked against ⟨a⟩ <= [a⟩ when the test space allows."""
    det = transformer_leq(bdia_op(a) * fdia_op(a), identity_op(a.model))
    try:
        check_testspace(a.model)
    except CapExceeded:
        return det
    if det != transformer_leq(fdia_op(a), fbox_op(a)):
        raise AlgebraError(f"the two forms of d-determinism disagree on {a!r}")
    return det


# ---------------------------------------------------------------------------
# commuting core
# ---------------------------------------------------------------------------


def _dc_on(o, p) -> bool:
    lhs = o.bb_star * test_op(p) * o.fa_star
    return transformer_leq(lhs, o.fa_star * o.bb_star)


def commuting_core(a, b):
    """Largest set r of peak states from which a* and b* still commute.

    ``dc(p)`` says ``⟨b*|⟨p⟩⟨a*⟩ <= ⟨a*⟩⟨b*|``; r joins the atoms satisfying
    it.  The result is checked to satisfy dc itself and to be maximal.
    """
    o = _Ops(a, b)
    m = o.model
    atoms = m.atoms()
    good = [atom for atom in atoms if _dc_on(o, atom)]
    r = m.test_sum(good)
    if not _dc_on(o, r):
        raise AlgebraError(f"commuting core {r!r} does not satisfy dc")
    for atom in atoms:
        if not m.test_leq(atom, r) and _dc_on(o, m.test_add(r, atom)):
            raise AlgebraError(f"commuting core {r!r} extends by {atom!r}")
    return r


# ---------------------------------------------------------------------------
# theorems as checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnionVerdict:
    verdict: str  # "pass", "fail" or "precondition-failed"
    quasi_commutes: bool
    biconditional_holds: bool
    failed_clause: Optional[str] = None


def check_union_theorem(a, b) -> UnionVerdict:
    """If a d-quasi-commutes over b: a+b Noetherian iff a and b are.

    Also checks that Noetherian a makes b*a Noetherian and that, for
    Noetherian a, local d-semi, d-semi and d-quasi commutation coincide.
    """
    m = model_of(a, b)
    na, nb, nab = is_noetherian(a), is_noetherian(b), is_noetherian(m.add(a, b))
    bicond = nab == (na and nb)
    quasi = d_quasi_commutes(a, b)
    if not quasi:
        return UnionVerdict("precondition-failed", False, bicond)
    failed = None
    if not bicond:
        failed = "biconditional"
    elif na and not is_noetherian(m.mul(m.star(b), a)):
        failed = "badecor"
    elif na and not (locally_d_semi_commutes(a, b) and d_semi_commutes(a, b)):
        failed = "semiquasinoether"
    return UnionVerdict("fail" if failed else "pass", True, bicond, failed)


@dataclass(frozen=True)
class NewmanVerdict:
    status: str  # "holds", "violated" or "hypotheses-not-met"
    failed_hypotheses: tuple
    d_commutes: bool
    witness: Optional[Witness] = None

    @property
    def hypotheses_met(self) -> bool:
        return not self.failed_hypotheses

    @property
    def conclusion(self) -> Optional[bool]:
        """The asserted conclusion, or None when the hypotheses do not hold."""
        return self.d_commutes if self.hypotheses_met else None


def check_newman(a, b) -> NewmanVerdict:
    """Noetherian a+b and local d-commutation give d-commutation.

    Hypotheses are evaluated, never assumed; d-commutation is still observed
    when they fail, but not reported as the theorem's conclusion.
    """
    m = model_of(a, b)
    failed = []
    if not is_noetherian(m.add(a, b)):
        failed.append("a+b not Noetherian")
    if not locally_d_commutes(a, b):
        failed.append("no local d-commutation")
    w = d_commutes_witness(a, b)
    if failed:
        status = "hypotheses-not-met"
    else:
        status = "holds" if w is None else "violated"
    return NewmanVerdict(status, tuple(failed), w is None, w)


@dataclass(frozen=True)
class CommutationReport:
    locally_d_semi_commutes: bool
    d_semi_commutes: bool
    d_quasi_commutes: bool
    locally_d_commutes: bool
    d_commutes: bool
    commuting_core: Any
    witness: Optional[tuple] = field(default=None)  # (predicate name, Witness)


def commutation_report(a, b) -> CommutationReport:
    o = _Ops(a, b)
    results = {}
    witness = None
    for name, pred in [
        ("locally_d_semi_commutes", _local_semi),
        ("d_semi_commutes", _semi),
        ("d_quasi_commutes", _quasi),
        ("locally_d_commutes", _local_dc),
        ("d_commutes", _dc),
    ]:
        w = _check(*pred(o))
        results[name] = w is None
        if w is not None and witness is None:
            witness = (name, w)
    core = commuting_core(a, b)
    rep = CommutationReport(**results, commuting_core=core, witness=witness)
    if rep.d_commutes and not rep.locally_d_commutes:
        raise AlgebraError("d-commutation without local d-commutation")
    if rep.d_semi_commutes and not rep.locally_d_semi_commutes:
        raise AlgebraError("d-semi-commutation without local d-semi-commutation")
    if (core == o.model.test_one) != rep.d_commutes:
        raise AlgebraError("commuting core is 1 exactly when a and b d-commute")
    return rep


def normaliser_is_d_deterministic(a) -> bool:
    return is_d_deterministic(normaliser(a))


# ---------------------------------------------------------------------------
# batched sweeps over relations
# ---------------------------------------------------------------------------


def _batch_leq(lhs, rhs, m, n):
    return kernels.atom_leq(lhs, rhs, m, n)


def sweep_pairs(A: np.ndarray, B: np.ndarray) -> dict[str, np.ndarray]:
    """Termination and commutation predicates for each pair ``(A[i], B[i])``.

    Returns boolean arrays keyed by predicate name, all of length m.
    """
    A = np.ascontiguousarray(A, dtype=np.uint64)
    B = np.ascontiguousarray(B, dtype=np.uint64)
    if A.shape != B.shape:
        raise ValueError(f"batch shape mismatch: {A.shape} vs {B.shape}")
    m, n = A.shape
    fd, bd = kernels.fdia, kernels.bdia
    S = A | B
    As, Bs, Ss = kernels.star(A), kernels.star(B), kernels.star(S)
    Ap = kernels.compose(A, As)
    BsA = kernels.compose(Bs, A)
    zero = np.uint64(0)
    out = {
        "noetherian_a": kernels.divergence(A) == zero,
        "noetherian_b": kernels.divergence(B) == zero,
        "noetherian_sum": kernels.divergence(S) == zero,
        "noetherian_bstar_a": kernels.divergence(BsA) == zero,
        "local_semi": _batch_leq(lambda q: fd(B, fd(A, q)), lambda q: fd(Ap, fd(Bs, q)), m, n),
        "semi": _batch_leq(lambda q: fd(Bs, fd(A, q)), lambda q: fd(Ap, fd(Bs, q)), m, n),
        "quasi": _batch_leq(lambda q: fd(B, fd(A, q)), lambda q: fd(A, fd(Ss, q)), m, n),
        "locally_d_commutes": _batch_leq(lambda q: bd(B, fd(A, q)), lambda q: fd(As, bd(Bs, q)), m, n),
        "d_commutes": _batch_leq(lambda q: bd(Bs, fd(As, q)), lambda q: fd(As, bd(Bs, q)), m, n),
    }
    return out


def newman_violations(sweep: dict[str, np.ndarray]) -> np.ndarray:
    """Indices where Newman's hypotheses hold but d-commutation fails."""
    hyp = sweep["noetherian_sum"] & sweep["locally_d_commutes"]
    return np.flatnonzero(hyp & ~sweep["d_commutes"])


def union_violations(sweep: dict[str, np.ndarray]) -> np.ndarray:
    """Indices of quasi-commuting pairs breaking the union theorem or its lemmas."""
    q = sweep["quasi"]
    na = sweep["noetherian_a"]
    bicond = sweep["noetherian_sum"] == (na & sweep["noetherian_b"])
    badecor = ~na | sweep["noetherian_bstar_a"]
    equiv = ~na | (sweep["local_semi"] & sweep["semi"])
    return np.flatnonzero(q & ~(bicond & badecor & equiv))
