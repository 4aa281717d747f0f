import numpy as np
import pytest

from katd.algebra import check_conformance
from katd.aux import (
    BoundedPathSet,
    TruncatedLanguage,
    fusion,
    lang_divergence,
    lang_model,
    lang_omega,
    lang_star,
    path_model,
    product_table,
)
from katd.termination import divergence, is_d_transitive, is_noetherian, is_omega_noetherian


def L(words, alphabet="ab", bound=2):
    return TruncatedLanguage.of(alphabet, bound, words)


def test_truncated_concatenation():
    assert (L(["a"]) * L(["b", "ab"])).words == frozenset({"ab"})
    assert (L(["", "a"]) * L(["b"])).words == frozenset({"b", "ab"})
    assert lang_star(L(["a"])).words == frozenset({"", "a", "aa"})


def test_language_omega_and_divergence_separate():
    a = L(["b"])
    m = a.model
    assert lang_omega(a) == m.zero
    assert lang_divergence(a) == m.one
    assert is_omega_noetherian(a) and not is_noetherian(a)
    # a language containing the empty word has full omega
    assert lang_omega(L(["", "a"])) == m.top


def test_language_tests_are_zero_and_epsilon():
    m = lang_model(("a", "b"), 2)
    assert [t.words for t in m.tests()] == [frozenset(), frozenset({""})]
    assert m.encode(L(["ba", "", "a"])) == ["", "a", "ba"]


@pytest.mark.parametrize("alphabet,bound", [(("a",), 2), (("a",), 3), (("a", "b"), 1)])
def test_language_conformance_exhaustive(alphabet, bound):
    assert check_conformance(lang_model(alphabet, bound)) == []


def test_language_conformance_sampled():
    m = lang_model(("a", "b"), 3)
    rng = np.random.default_rng(11)
    assert check_conformance(m, elements=[m.random_element(rng) for _ in range(10)]) == []


def test_product_table_matches_concatenation():
    m = lang_model(("a",), 2)
    table = product_table(m)
    for i in range(m.num_elements()):
        for j in range(m.num_elements()):
            assert m.element_at(int(table[i, j])) == m.mul(m.element_at(i), m.element_at(j))


def test_path_fusion():
    a = BoundedPathSet.of(2, 3, [(0, 1)])
    b = BoundedPathSet.of(2, 3, [(1, 1), (0, 0)])
    assert fusion(a, b).paths == frozenset({(0, 1, 1)})
    assert fusion(b, a).paths == frozenset({(0, 0, 1)})


def test_path_loop_is_d_transitive_but_not_transitive():
    m = path_model(1, 3)
    a = m.paths([(0, 0)])
    assert fusion(a, a).paths == frozenset({(0, 0, 0)})
    assert not fusion(a, a) <= a
    assert is_d_transitive(a)


def test_path_model_is_not_extensional():
    m = path_model(1, 3)
    a, b = m.paths([(0, 0)]), m.paths([(0,)])
    assert all(m.fdia(a, p) == m.fdia(b, p) for p in m.tests())
    assert not a <= b


def test_path_conformance_sampled():
    m = path_model(2, 3)
    rng = np.random.default_rng(5)
    assert check_conformance(m, elements=[m.random_element(rng) for _ in range(12)]) == []


def test_path_divergence_of_loop():
    m = path_model(2, 3)
    a = m.paths([(0, 0), (1, 0)])
    assert divergence(a) == m.node_test([0, 1])
    # each fusion step lengthens paths past the bound, so omega collapses
    assert m.omega(a) == m.zero
    t = m.node_test([1])
    assert m.omega(t) == m.mul(t, m.top)
