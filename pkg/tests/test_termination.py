import numpy as np
import pytest
from hypothesis import given

from katd.errors import CapExceeded, UnsupportedOperation
from katd.rel import FiniteRelation, StateSet, rel_model
from katd.termination import (
    UNSUPPORTED,
    analyze,
    convergence,
    divergence,
    divergence_oracle,
    is_d_transitive,
    is_loebian,
    is_noetherian,
    is_omega_noetherian,
    is_pre_loebian,
    noetherian_oracle,
    normal_forms,
    normaliser,
    postfix_noetherian,
)

from conftest import relations, sized_relations

R = FiniteRelation.of
S = StateSet.of

# {(A,A),(A,B)} with A=0, B=1
LOOP_EXIT = R(2, [(0, 0), (0, 1)])


def test_loop_with_exit():
    assert divergence(LOOP_EXIT) == S(2, [0])
    assert convergence(LOOP_EXIT) == S(2, [1])
    assert normal_forms(LOOP_EXIT) == S(2, [1])
    assert normaliser(LOOP_EXIT) == R(2, [(0, 1), (1, 1)])
    assert not is_noetherian(LOOP_EXIT)


def test_chain_and_cycle():
    chain = R(4, [(0, 1), (1, 2), (2, 3)])
    assert is_noetherian(chain)
    assert normal_forms(chain) == S(4, [3])
    assert normaliser(chain) == R(4, [(x, 3) for x in range(4)])
    cycle_tail = R(4, [(0, 1), (1, 2), (2, 1), (3, 0)])
    assert divergence(cycle_tail) == S(4, [0, 1, 2, 3])
    assert divergence(R(4, [(1, 2), (2, 1), (0, 3)])) == S(4, [1, 2])


def test_empty_and_identity():
    m = rel_model(3)
    assert is_noetherian(m.zero)
    assert normaliser(m.zero) == m.one
    assert divergence(m.one) == m.test_one
    assert normaliser(R(3, [(0, 1), (1, 2), (2, 0)])) == m.zero


def test_report_fields():
    rep = analyze(LOOP_EXIT)
    assert rep.noetherian is False
    assert rep.divergence == S(2, [0])
    assert rep.omega_empty is False
    assert rep.pre_loebian is False and rep.loebian is False
    assert rep.d_transitive is True


def test_report_marks_missing_omega():
    from katd.algebra import Model

    class NoOmega(Model):
        kind = "stub"

    assert repr(UNSUPPORTED) == "UNSUPPORTED"
    with pytest.raises(TypeError):
        bool(UNSUPPORTED)
    stub = NoOmega()
    with pytest.raises(UnsupportedOperation):
        stub.omega(None)


def test_omega_noetherian_in_rel(rel3):
    a = R(3, [(0, 1), (1, 1)])
    assert not is_omega_noetherian(a)
    assert is_omega_noetherian(R(3, [(0, 1)]))


def test_postfix_noetherian_respects_cap(monkeypatch):
    monkeypatch.setenv("KATD_MAX_TESTSPACE", "4")
    with pytest.raises(CapExceeded):
        postfix_noetherian(R(3, [(0, 1)]))


def test_all_rel3_agrees_with_graph_oracles():
    m = rel_model(3)
    for a in m.elements():
        div = divergence(a)
        assert div == divergence_oracle(a)
        assert (div == m.test_zero) == noetherian_oracle(a) == postfix_noetherian(a)
        assert is_noetherian(a) == (m.omega(a) == m.zero)


@given(sized_relations(max_n=7))
def test_divergence_oracle_random(a):
    assert divergence(a) == divergence_oracle(a)
    assert is_noetherian(a) == noetherian_oracle(a)


@given(relations(3))
def test_loeb_properties(a):
    assert is_noetherian(a) == is_pre_loebian(a)
    if is_loebian(a):
        assert is_pre_loebian(a)
    if is_d_transitive(a):
        assert is_loebian(a) == is_pre_loebian(a)


@given(sized_relations(max_n=5))
def test_normaliser_properties(a):
    m = a.model
    nrm = normaliser(a)
    assert m.mul(nrm, nrm) == nrm
    if is_noetherian(a):
        assert m.fdia(nrm, m.test_one) == m.test_one


def test_random_rel6_batch_agrees_with_oracle():
    from katd import kernels
    from katd.rel import from_array, random_relations_array

    arr = random_relations_array(6, 300, np.random.default_rng(0), density=0.15)
    divs = kernels.divergence(arr)
    for k, a in enumerate(from_array(arr)):
        assert StateSet(6, int(divs[k])) == divergence_oracle(a)
