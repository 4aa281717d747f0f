import json
import subprocess
import sys

import pytest

from katd.ars import ArsParseError, parse_ars
from katd.cli import main
from katd.rel import FiniteRelation

from conftest import LOOP_WITH_EXIT, PEAK_SYSTEM


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_loop_with_exit():
    doc = parse_ars(LOOP_WITH_EXIT)
    assert doc.states == ["A", "B"]
    assert doc.relations == {"a": [("A", "A"), ("A", "B")]}
    assert doc.relation("a") == FiniteRelation.of(2, [(0, 0), (0, 1)])


def test_parse_four_state_example():
    doc = parse_ars(PEAK_SYSTEM)
    assert doc.states == ["1", "2", "3", "4"]
    assert doc.relation("a") == FiniteRelation.of(4, [(1, 2), (2, 3)])
    assert doc.relation("b") == FiniteRelation.of(4, [(1, 0), (2, 1)])
    assert parse_ars(doc.to_text()) == doc


def test_parse_comments_blank_lines_and_empty_relation():
    doc = parse_ars("# header\n\nstates: x y  # two\nr:\ns: x -> y\n")
    assert doc.relations == {"r": [], "s": [("x", "y")]}


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("a: X -> Y\n", 1, "states line must come first"),
        ("states: A\nstates: B\n", 2, "duplicate states line"),
        ("states: A B\na: A -> C\n", 2, "unknown state"),
        ("states: A B\n\na: A => B\n", 3, "malformed edge"),
        ("states: A A\n", 1, "declared twice"),
        ("states: A\n9x: A -> A\n", 2, "bad relation name"),
        ("states: A\njust words\n", 2, "expected"),
        ("# nothing\n", 1, "missing states line"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ArsParseError) as info:
        parse_ars(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_newman_texts(capsys, ars_file):
    code, out, _ = run(capsys, "newman", ars_file(PEAK_SYSTEM), "a", "b")
    assert code == 0
    assert out.strip() == "hypotheses not met: a+b not Noetherian; note: d-commutation indeed fails at state 4"
    same = ars_file("states: 1 2\na: 1 -> 2\nb: 1 -> 2\n", "same.ars")
    code, out, _ = run(capsys, "newman", same, "a", "b")
    assert out.strip() == "hypotheses met; d-commutation holds"


def test_missing_relation_and_parse_error_exit_2(capsys, ars_file):
    code, _, err = run(capsys, "newman", ars_file(PEAK_SYSTEM), "a", "zz")
    assert code == 2 and "no relation named 'zz'" in err
    code, _, err = run(capsys, "analyze", ars_file("a: X -> Y\n"))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "analyze", "/nonexistent/file.ars")
    assert code == 2


def test_analyze_loop_with_exit(capsys, ars_file):
    code, out, _ = run(capsys, "analyze", ars_file(LOOP_WITH_EXIT), "a", "--json")
    assert code == 0
    rec = json.loads(out)["relations"]["a"]
    assert rec["noetherian"] is False
    assert rec["normal_forms"] == ["B"]
    assert rec["divergence"] == ["A"]
    assert rec["normaliser"] == [["A", "B"], ["B", "B"]]


def test_analyze_empty_relation(capsys, ars_file):
    code, out, _ = run(capsys, "analyze", ars_file("states: p q\ne:\n"), "--json")
    rec = json.loads(out)["relations"]["e"]
    assert rec["noetherian"] is True
    assert rec["normaliser"] == [["p", "p"], ["q", "q"]]


def test_analyze_union(capsys, ars_file):
    code, out, _ = run(capsys, "analyze", ars_file(PEAK_SYSTEM), "--rels", "a,b", "--union", "--json")
    report = json.loads(out)
    total = report["relations"]["a+b"]
    assert total["noetherian"] is False
    assert total["divergence"] == ["2", "3"]
    pair = report["pairs"]["a,b"]
    assert pair == {
        "commuting_core": ["1", "4"],
        "d_commutes": False,
        "locally_d_commutes": True,
        "newman": {"conclusion": None, "hypotheses_met": False},
        "union": {"biconditional_holds": False, "quasi_commutes": False},
    }


def test_report_schema_fields(capsys, ars_file):
    _, out, _ = run(capsys, "analyze", ars_file(PEAK_SYSTEM), "--json")
    report = json.loads(out)
    assert set(report) == {"version", "input_digest", "relations", "pairs"}
    assert set(report["pairs"]) == {"a,b", "b,a"}
    fields = {"noetherian", "divergence", "convergence", "normal_forms", "omega_empty", "pre_loebian", "loebian",
              "d_transitive", "normaliser"}
    assert all(set(rec) == fields for rec in report["relations"].values())


def test_text_report_lists_relations(capsys, ars_file):
    code, out, _ = run(capsys, "analyze", ars_file(PEAK_SYSTEM))
    assert code == 0
    assert out.splitlines()[0].split()[:3] == ["relation", "noetherian", "divergence"]
    assert any(line.startswith("a,b ") for line in out.splitlines())


def test_union_command(capsys, ars_file):
    code, out, _ = run(capsys, "union", ars_file(PEAK_SYSTEM), "a", "b")
    assert out.strip() == "precondition failed: a does not d-quasi-commute over b"
    chain = ars_file("states: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n", "chain.ars")
    code, out, _ = run(capsys, "union", chain, "a", "b", "--json")
    assert json.loads(out)["union"]["verdict"] == "pass"


def test_byte_identical_json(capsys, ars_file):
    path = ars_file(PEAK_SYSTEM)
    first = run(capsys, "analyze", path, "--json")[1]
    second = run(capsys, "analyze", path, "--json")[1]
    assert first == second


def test_laws_core_exits_zero(capsys):
    code, out, _ = run(capsys, "laws", "--suite", "core", "--states", "2", "--model", "rel")
    assert code == 0
    assert out.rstrip().endswith("0 unexpected")


def test_laws_counterexamples_json(capsys):
    code, out, _ = run(capsys, "laws", "--suite", "counterexamples", "--states", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert all(v["status"] == "counterexample" for v in doc["laws"])


def test_laws_cap_exceeded_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("KATD_MAX_ASSIGNMENTS", "10")
    code, _, err = run(capsys, "laws", "--suite", "core", "--states", "2")
    assert code == 2 and "exceed cap" in err


def test_laws_export(capsys):
    code, out, _ = run(capsys, "laws", "--export")
    assert code == 0
    assert any(e["name"] == "newman" for e in json.loads(out))


def test_module_entry_point(ars_file):
    out = subprocess.run(
        [sys.executable, "-m", "katd", "newman", ars_file(PEAK_SYSTEM), "a", "b"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "state 4" in out.stdout
