"""Acceptance criteria.

Each test prints one line of the form ``[PASS] criterion N: ...`` or
``[FAIL] criterion N: ...`` before asserting.  The lines are also repeated
in an "acceptance criteria" section at the end of the pytest run.
"""

import dataclasses
import json
import time

import numpy as np
import pytest

import katd
from katd.aux import TruncatedLanguage, lang_model
from katd.cli import main
from katd.laws import Exhaustive, Sampled, check_law, lookup, recheck_counterexample, run_suite, suite
from katd.laws.expr import ELEM
from katd.laws.library import MUST_FAIL
from katd.rel import FiniteRelation, all_relations_array, random_relations_array, rel_model
from katd.rewriting import (
    check_newman,
    check_union_theorem,
    d_commutes_witness,
    locally_d_commutes,
    newman_violations,
    sweep_pairs,
    union_violations,
)
from katd.termination import (
    divergence,
    divergence_oracle,
    is_d_transitive,
    is_loebian,
    is_noetherian,
    is_pre_loebian,
    noetherian_oracle,
    normaliser,
)

from conftest import ACCEPTANCE_LINES, LOOP_WITH_EXIT, PEAK_SYSTEM

# pinned limits
CORE_SECONDS = 60.0
TERMINATION_SECONDS = 30.0
REL6_SAMPLES = 10_000
REL4_PAIR_SAMPLES = 1_000
REL5_PAIR_SAMPLES = 10_000
LANG_SAMPLES = 200
SEED = 20240611


def verdict(number, title, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    return passed


def _cli_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _unary(law):
    return list(law.sorts.values()).count(ELEM) == 1


# ---------------------------------------------------------------------------


def test_criterion_1_core_laws_exhaustive():
    start = time.perf_counter()
    rel2 = run_suite("core", Exhaustive(2), "rel")
    unary = [law for law in suite("core") if _unary(law)]
    rel3 = [check_law(law, Exhaustive(3), "rel") for law in unary]
    elapsed = time.perf_counter() - start
    verdicts = rel2.verdicts + rel3
    failures = [v.law for v in verdicts if v.status != "holds-exhaustive"]
    required = {"dia1", "dia2", "box1", "box2", "galois", "diaind", "pdlstar", *(f"maxprops{k}" for k in range(1, 9))}
    covered = required <= {v.law for v in rel2.verdicts}
    ok = not failures and covered and elapsed < CORE_SECONDS
    verdict(1, "core laws hold exhaustively on REL(2) and unary laws on REL(3)", ok,
            f"{len(rel2.verdicts)} laws on REL(2), {len(rel3)} unary on REL(3), {len(failures)} failures, {elapsed:.1f}s")
    assert covered
    assert failures == []
    assert elapsed < CORE_SECONDS


def test_criterion_2_termination_matches_graph_oracles():
    start = time.perf_counter()
    mismatches = 0
    for a in rel_model(3).elements():
        mismatches += is_noetherian(a) != noetherian_oracle(a)
        mismatches += divergence(a) != divergence_oracle(a)
    rng = np.random.default_rng(SEED)
    rows = random_relations_array(6, REL6_SAMPLES, rng, density=0.15)
    noetherian_seen = 0
    for row in rows:
        a = FiniteRelation(6, tuple(int(v) for v in row))
        n = is_noetherian(a)
        noetherian_seen += n
        mismatches += n != noetherian_oracle(a)
        mismatches += divergence(a) != divergence_oracle(a)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < TERMINATION_SECONDS
    verdict(2, "Noetherity and divergence match acyclicity/SCC oracles", ok,
            f"512 REL(3) + {REL6_SAMPLES} REL(6), {noetherian_seen} Noetherian samples, "
            f"{mismatches} mismatches, {elapsed:.1f}s")
    assert 0 < noetherian_seen < REL6_SAMPLES
    assert mismatches == 0
    assert elapsed < TERMINATION_SECONDS


def test_criterion_3_loeb_suite():
    failures = 0
    d_transitive = 0
    for a in rel_model(3).elements():
        failures += is_noetherian(a) != is_pre_loebian(a)
        if is_d_transitive(a):
            d_transitive += 1
            failures += is_loebian(a) != is_pre_loebian(a)
    ok = failures == 0
    verdict(3, "Noetherian iff pre-Löbian; Löbian iff pre-Löbian when d-transitive", ok,
            f"512 relations, {d_transitive} d-transitive, {failures} failures")
    assert failures == 0


def test_criterion_4_divergence_calculus():
    names = [f"nulem{k}" for k in range(1, 8)] + ["divvsfound"]
    results = []
    for name in names:
        results.append(check_law(name, Exhaustive(2), "rel"))
        results.append(check_law(name, Sampled(REL4_PAIR_SAMPLES, SEED, 4), "rel"))
    failures = [(v.law, v.status) for v in results if not v.status.startswith("holds")]
    ok = not failures
    verdict(4, "divergence calculus on REL(2) exhaustively and seeded REL(4)", ok,
            f"{len(names)} laws, {len(failures)} failures")
    assert failures == []


def test_criterion_5_omega_bridge():
    m3 = rel_model(3)
    rel_fail = sum(m3.fdia(m3.omega(a), m3.test_one) != divergence(a) for a in m3.elements())
    m = lang_model(("a", "b"), 4)
    words = [w for w in m.universe if w]
    rng = np.random.default_rng(SEED)
    lang_fail = 0
    for _ in range(LANG_SAMPLES):
        keep = rng.random(len(words)) < rng.uniform(0.05, 0.6)
        keep[rng.integers(len(words))] = True  # nonempty
        lang = TruncatedLanguage(m.alphabet, m.bound, frozenset(w for w, k in zip(words, keep) if k))
        lang_fail += not (m.omega(lang) == m.zero and divergence(lang) == m.test_one)
    ok = rel_fail == 0 and lang_fail == 0
    verdict(5, "dom a^ω = ∇a on REL(3); ε-free languages have ω = 0 and ∇ = 1", ok,
            f"REL(3) mismatches {rel_fail}, language failures {lang_fail}/{LANG_SAMPLES}")
    assert rel_fail == 0
    assert lang_fail == 0


def test_criterion_6_rewriting_theorems():
    rels = all_relations_array(3)
    A = np.repeat(rels, len(rels), axis=0)
    B = np.tile(rels, (len(rels), 1))
    sweep3 = sweep_pairs(A, B)
    rng = np.random.default_rng(SEED)
    A5 = random_relations_array(5, REL5_PAIR_SAMPLES, rng, density=0.15)
    B5 = random_relations_array(5, REL5_PAIR_SAMPLES, rng, density=0.15)
    sweep5 = sweep_pairs(A5, B5)
    violations = sum(len(newman_violations(s)) + len(union_violations(s)) for s in (sweep3, sweep5))
    newman_qualifying = int(np.sum(sweep3["noetherian_sum"] & sweep3["locally_d_commutes"]))
    union_qualifying = int(np.sum(sweep3["quasi"]))

    engine = [check_law(name, Sampled(REL5_PAIR_SAMPLES, SEED, 5)) for name in ("newman", "bade")]
    engine_ok = all(v.status == "holds-sampled" and v.qualifying > 0 for v in engine)

    a = FiniteRelation.of(4, [(1, 2), (2, 3)])
    b = FiniteRelation.of(4, [(1, 0), (2, 1)])
    newman = check_newman(a, b)
    witness = d_commutes_witness(a, b)
    fixture_ok = (
        locally_d_commutes(a, b)
        and not newman.d_commutes
        and not is_noetherian(a + b)
        and newman.status == "hypotheses-not-met"
        and newman.failed_hypotheses == ("a+b not Noetherian",)
        and check_union_theorem(a, b).verdict == "precondition-failed"
        and list(witness.atom) == [3]  # state 4
    )
    ok = violations == 0 and engine_ok and fixture_ok
    verdict(6, "Newman and the union theorem on REL(3) pairs and seeded REL(5) pairs", ok,
            f"{newman_qualifying} Newman-qualifying and {union_qualifying} quasi-commuting REL(3) pairs, "
            f"{violations} violations, pinned 4-state example {'reproduced' if fixture_ok else 'differs'}")
    assert violations == 0
    assert engine_ok
    assert fixture_ok


LOOP_WITH_EXIT_JSON = """{
  "input_digest": "1039bae2a5838983e7dada6bdc870c2657bed6da805c59d804cc6aca592e921e",
  "pairs": {},
  "relations": {
    "a": {
      "convergence": [
        "B"
      ],
      "d_transitive": true,
      "divergence": [
        "A"
      ],
      "loebian": false,
      "noetherian": false,
      "normal_forms": [
        "B"
      ],
      "normaliser": [
        [
          "A",
          "B"
        ],
        [
          "B",
          "B"
        ]
      ],
      "omega_empty": false,
      "pre_loebian": false
    }
  },
  "version": "%s"
}
"""

SWAP_PAIR_RELATIONS = (
    '{"a": {"convergence": ["1", "2"], "d_transitive": true, "divergence": [], "loebian": true, '
    '"noetherian": true, "normal_forms": ["2"], "normaliser": [["1", "2"], ["2", "2"]], "omega_empty": true, '
    '"pre_loebian": true}, "a+b": {"convergence": [], "d_transitive": false, "divergence": ["1", "2"], '
    '"loebian": false, "noetherian": false, "normal_forms": [], "normaliser": [], "omega_empty": false, '
    '"pre_loebian": false}, "b": {"convergence": ["1", "2"], "d_transitive": true, "divergence": [], '
    '"loebian": true, "noetherian": true, "normal_forms": ["1"], "normaliser": [["1", "1"], ["2", "1"]], '
    '"omega_empty": true, "pre_loebian": true}}'
)

COUNTEREXAMPLES = {
    "sum-of-noetherians-is-noetherian":
        '{"assignment": {"a": [[0, 1]], "b": [[1, 0]]}, "index": 0, "model": {"kind": "rel", "states": 2}, '
        '"source": "fixture"}',
    "d-transitive-is-transitive":
        '{"assignment": {"a": [[0, 0]]}, "index": 0, "model": {"bound": 3, "kind": "path", "nodes": 1}, '
        '"source": "fixture"}',
}


def test_criterion_7_pinned_fixtures(capsys, ars_file):
    checks = {}
    _, out = _cli_json(capsys, "analyze", ars_file(LOOP_WITH_EXIT), "--json")
    checks["loop-with-exit JSON"] = out == LOOP_WITH_EXIT_JSON % katd.__version__
    rec = json.loads(out)["relations"]["a"]
    checks["dom nrm = 1"] = sorted({src for src, _ in rec["normaliser"]}) == ["A", "B"]

    # normalisers of the empty relation and of a relation without normal forms
    empty = rel_model(3).zero
    cycle = FiniteRelation.of(3, [(0, 1), (1, 2), (2, 0)])
    checks["nrm 0 = 1"] = normaliser(empty) == rel_model(3).one
    checks["nrm of total a = 0"] = normaliser(cycle) == rel_model(3).zero
    checks["normaliser laws"] = all(
        check_law(name, Exhaustive(3), "rel").status == "holds-exhaustive" for name in ("nrm-zero", "nrm-total")
    )

    _, out = _cli_json(capsys, "analyze", ars_file("states: 1 2\na: 1 -> 2\nb: 2 -> 1\n", "swap.ars"),
                       "--rels", "a,b", "--union", "--json")
    checks["Noetherian summands JSON"] = json.dumps(json.loads(out)["relations"], sort_keys=True) == SWAP_PAIR_RELATIONS

    _, out = _cli_json(capsys, "laws", "--suite", "counterexamples", "--states", "2", "--json")
    laws = {v["law"]: v for v in json.loads(out)["laws"]}
    for name, expected in COUNTEREXAMPLES.items():
        checks[f"{name} JSON"] = json.dumps(laws[name]["counterexample"], sort_keys=True) == expected

    failed = [k for k, v in checks.items() if not v]
    verdict(7, "pinned fixtures reproduce byte-exactly", not failed,
            f"{len(checks)} checks" + (f", failed: {', '.join(failed)}" if failed else ""))
    assert failed == []


def test_criterion_8_must_fail_polarity():
    must_fail = [law for law in suite("all") if law.polarity == MUST_FAIL]
    required = {"sum-of-noetherians-is-noetherian", "omega-noetherian-is-noetherian", "dom-nrm-implies-noetherian"}
    unexpected = []
    by_search = []
    for law in must_fail:
        v = check_law(law, Exhaustive(2))
        if v.status != "counterexample" or recheck_counterexample(law, v.counterexample) != (True, False):
            unexpected.append(law.name)
        # relation non-theorems are refuted by REL(2) search even without their pinned fixture
        if law.models[0] == "rel" and law.name != "newman-weakened":
            bare = dataclasses.replace(law, fixtures=())
            found = check_law(bare, Exhaustive(2))
            by_search.append(found.status == "counterexample")
    ok = not unexpected and required <= {law.name for law in must_fail} and all(by_search)
    verdict(8, "every must-fail law yields a counterexample", ok,
            f"{len(must_fail)} non-theorems, {len(unexpected)} unexpectedly hold, "
            f"{sum(by_search)}/{len(by_search)} refuted by bare REL(2) search")
    assert unexpected == []
    assert required <= {law.name for law in must_fail}
    assert all(by_search)


def test_criterion_9_determinism(capsys):
    argv = ["laws", "--suite", "all", "--states", "3", "--samples", "150", "--seed", "11", "--json"]
    code1, first = _cli_json(capsys, *argv)
    code2, second = _cli_json(capsys, *argv)
    doc = json.loads(first)
    payloads = [(v["law"], v["counterexample"]) for v in doc["laws"] if "counterexample" in v]
    rechecked = [recheck_counterexample(lookup(name), payload) for name, payload in payloads]
    ok = first == second and code1 == code2 == 0 and payloads and all(r == (True, False) for r in rechecked)
    verdict(9, "identical seeds give identical JSON; counterexamples re-evaluate", bool(ok),
            f"{len(doc['laws'])} laws, {len(payloads)} counterexamples re-checked")
    assert first == second
    assert code1 == code2 == 0
    assert payloads
    assert all(r == (True, False) for r in rechecked)


@pytest.mark.parametrize("text", [PEAK_SYSTEM])
def test_four_state_cli_text(capsys, ars_file, text):
    _, out = _cli_json(capsys, "newman", ars_file(text), "a", "b")
    assert out.strip() == "hypotheses not met: a+b not Noetherian; note: d-commutation indeed fails at state 4"
