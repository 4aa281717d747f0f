"""Command line front end.

    katd analyze FILE [--rels a,b] [--union] [--json]
    katd newman FILE A B [--json]
    katd union FILE A B [--json]
    katd laws --suite NAME [--states N] [--samples K --seed S] [--model rel|lang|path] [--json]

Verdicts are data and exit 0.  Exit 2 means the input could not be
processed (parse error, unknown relation, cap exceeded); exit 1 means a law
suite produced an unexpected verdict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .ars import ArsDocument, ArsParseError, parse_ars
from .errors import CapExceeded
from .laws import SUITES, Exhaustive, Sampled, export_json, run_suite
from .rel import FiniteRelation
from .rewriting import check_newman, check_union_theorem, commuting_core, d_commutes, locally_d_commutes
from .termination import analyze, normaliser

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _load(path: str) -> tuple[ArsDocument, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = parse_ars(data.decode("utf-8"))
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8") from None
    except ArsParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    return doc, hashlib.sha256(data).hexdigest()


def _relation(doc: ArsDocument, name: str) -> FiniteRelation:
    if name not in doc.relations:
        known = ", ".join(doc.relations) or "none"
        raise InputError(f"no relation named {name!r} (known: {known})")
    return doc.relation(name)


# ---------------------------------------------------------------------------
# report projections
# ---------------------------------------------------------------------------


def relation_record(doc: ArsDocument, rel: FiniteRelation) -> dict:
    rep = analyze(rel)
    return {
        "noetherian": rep.noetherian,
        "divergence": doc.names_of(rep.divergence),
        "convergence": doc.names_of(rep.convergence),
        "normal_forms": doc.names_of(rep.normal_forms),
        "omega_empty": rep.omega_empty,
        "pre_loebian": rep.pre_loebian,
        "loebian": rep.loebian,
        "d_transitive": rep.d_transitive,
        "normaliser": doc.edges_of(normaliser(rel)),
    }


def pair_record(doc: ArsDocument, a: FiniteRelation, b: FiniteRelation) -> dict:
    newman = check_newman(a, b)
    union = check_union_theorem(a, b)
    return {
        "locally_d_commutes": locally_d_commutes(a, b),
        "d_commutes": d_commutes(a, b),
        "commuting_core": doc.names_of(commuting_core(a, b)),
        "newman": {"hypotheses_met": newman.hypotheses_met, "conclusion": newman.conclusion},
        "union": {"quasi_commutes": union.quasi_commutes, "biconditional_holds": union.biconditional_holds},
    }


def build_report(doc: ArsDocument, digest: str, names: list[str], union: bool = False) -> dict:
    rels = {name: _relation(doc, name) for name in names}
    relations = {name: relation_record(doc, r) for name, r in rels.items()}
    if union:
        total = FiniteRelation.empty(doc.n)
        for r in rels.values():
            total = total + r
        relations["+".join(names)] = relation_record(doc, total)
    pairs = {
        f"{x},{y}": pair_record(doc, rels[x], rels[y])
        for x in names
        for y in names
        if x != y
    }
    return {"version": __version__, "input_digest": digest, "relations": relations, "pairs": pairs}


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, list):
        return "{" + ",".join(str(v) for v in value) + "}"
    return str(value)


_REL_COLUMNS = ["noetherian", "divergence", "convergence", "normal_forms", "omega_empty", "pre_loebian", "loebian",
                "d_transitive"]


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[k]) for r in rows)) for k, h in enumerate(header)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header, *rows]]
    return "\n".join(lines)


def render_report(report: dict) -> str:
    rel_rows = [[name] + [_fmt(rec[c]) for c in _REL_COLUMNS] for name, rec in report["relations"].items()]
    out = [_table(["relation", *_REL_COLUMNS], rel_rows)]
    if report["pairs"]:
        pair_rows = [
            [key, _fmt(rec["locally_d_commutes"]), _fmt(rec["d_commutes"]), _fmt(rec["commuting_core"]),
             _fmt(rec["newman"]["conclusion"]), _fmt(rec["union"]["quasi_commutes"])]
            for key, rec in report["pairs"].items()
        ]
        header = ["pair", "locally_d_commutes", "d_commutes", "commuting_core", "newman", "quasi_commutes"]
        out += ["", _table(header, pair_rows)]
    return "\n".join(out)


def newman_text(doc: ArsDocument, verdict) -> str:
    if verdict.witness is not None:
        where = ",".join(doc.names_of(verdict.witness.atom))
        observed = f"d-commutation indeed fails at state {where}"
    else:
        observed = "d-commutation holds"
    if not verdict.hypotheses_met:
        return f"hypotheses not met: {', '.join(verdict.failed_hypotheses)}; note: {observed}"
    if verdict.d_commutes:
        return "hypotheses met; d-commutation holds"
    return f"hypotheses met; VIOLATION: {observed.replace('indeed ', '')}"


def union_text(verdict, a_name: str, b_name: str) -> str:
    if verdict.verdict == "precondition-failed":
        return f"precondition failed: {a_name} does not d-quasi-commute over {b_name}"
    if verdict.verdict == "pass":
        return f"precondition met; {a_name}+{b_name} is Noetherian iff {a_name} and {b_name} are"
    return f"precondition met; VIOLATION in {verdict.failed_clause}"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    doc, digest = _load(args.file)
    if args.rels:
        names = [n.strip() for n in args.rels.split(",") if n.strip()]
    elif args.relation:
        names = [args.relation]
    else:
        names = list(doc.relations)
    report = build_report(doc, digest, names, union=args.union)
    print(_dump(report) if args.json else render_report(report))
    return EXIT_OK


def _pair_command(args, check, render) -> int:
    doc, digest = _load(args.file)
    a, b = _relation(doc, args.a), _relation(doc, args.b)
    verdict = check(a, b)
    if args.json:
        print(_dump({"version": __version__, "input_digest": digest, "pair": f"{args.a},{args.b}",
                     args.command: render(doc, verdict, as_json=True)}))
    else:
        print(render(doc, verdict, as_json=False))
    return EXIT_OK


def _newman_payload(doc, verdict, as_json):
    if not as_json:
        return newman_text(doc, verdict)
    return {
        "status": verdict.status,
        "hypotheses_met": verdict.hypotheses_met,
        "failed_hypotheses": list(verdict.failed_hypotheses),
        "conclusion": verdict.conclusion,
        "d_commutes": verdict.d_commutes,
        "witness": None if verdict.witness is None else doc.names_of(verdict.witness.atom),
    }


def cmd_newman(args) -> int:
    return _pair_command(args, check_newman, _newman_payload)


def cmd_union(args) -> int:
    def payload(doc, verdict, as_json):
        if not as_json:
            return union_text(verdict, args.a, args.b)
        return {
            "verdict": verdict.verdict,
            "quasi_commutes": verdict.quasi_commutes,
            "biconditional_holds": verdict.biconditional_holds,
            "failed_clause": verdict.failed_clause,
        }

    return _pair_command(args, check_union_theorem, payload)


def cmd_laws(args) -> int:
    if args.export:
        print(export_json())
        return EXIT_OK
    if args.samples:
        strategy = Sampled(args.samples, args.seed, args.states)
    else:
        strategy = Exhaustive(args.states)
    result = run_suite(args.suite, strategy, args.model)
    if args.json:
        print(result.to_json())
    else:
        rows = []
        for v in result.verdicts:
            cov = f"{v.qualifying}/{v.checked}" if v.status != "not-applicable" else "-"
            rows.append([v.law, v.polarity, v.status, cov, v.outcome])
        print(_table(["law", "polarity", "status", "qualifying/checked", "outcome"], rows))
        bad = sum(not v.ok for v in result.verdicts)
        print(f"\n{len(result.verdicts)} laws, {bad} unexpected")
    return EXIT_OK if result.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="katd", description="Termination and confluence analysis of finite ARSs.")
    parser.add_argument("--version", action="version", version=f"katd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="termination report for relations and pairs")
    p.add_argument("file")
    p.add_argument("relation", nargs="?", help="single relation to analyze (default: all)")
    p.add_argument("--rels", help="comma-separated relation names")
    p.add_argument("--union", action="store_true", help="also analyze the sum of the selected relations")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    for name, func, help_text in [
        ("newman", cmd_newman, "check Newman's lemma on a pair"),
        ("union", cmd_union, "check the union theorem on a pair"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("laws", help="run a law suite")
    p.add_argument("--suite", default="core", choices=[*SUITES, "all"])
    p.add_argument("--states", type=int, default=2, help="model size: states, word bound or path nodes")
    p.add_argument("--samples", type=int, default=0, help="sample count (0: exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=["rel", "lang", "path"])
    p.add_argument("--export", action="store_true", help="print the law library as JSON and exit")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_laws)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, CapExceeded) as exc:
        print(f"katd: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
