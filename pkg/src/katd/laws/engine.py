"""Counterexample search for laws over finite models.

Exhaustive search walks assignments in mixed-radix order: the first variable
(elements first, then tests, each by name) is the most significant digit and
element values follow their integer encoding.  The first counterexample is
therefore the one with the smallest index, which makes it reproducible.

Sampling draws assignments from a Philox generator keyed by the seed and the
law name, so a law's verdict does not depend on what ran before it.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ..aux import lang_model, path_model
from ..errors import CapExceeded, UnsupportedOperation
from ..rel import rel_model
from .expr import ELEM, And, compile_condition
from .library import GENERATORS, MUST_FAIL, MUST_HOLD, Law, lookup, suite

DEFAULT_MAX_ASSIGNMENTS = 10**6
LANG_ALPHABET = ("a", "b")
PATH_BOUND = 3


def max_assignments() -> int:
    raw = os.environ.get("KATD_MAX_ASSIGNMENTS")
    return int(raw) if raw else DEFAULT_MAX_ASSIGNMENTS


@dataclass(frozen=True)
class Exhaustive:
    n: int

    def to_dict(self):
        return {"kind": "exhaustive", "n": self.n}


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int
    n: int

    def to_dict(self):
        return {"kind": "sampled", "count": self.count, "seed": self.seed, "n": self.n}


Strategy = Union[Exhaustive, Sampled]


def model_for(kind: str, n: int):
    """The model of the given family at size n (states, word bound or nodes)."""
    if kind == "rel":
        return rel_model(n)
    if kind == "lang":
        return lang_model(LANG_ALPHABET, n)
    if kind == "path":
        return path_model(n, PATH_BOUND)
    raise ValueError(f"unknown model kind {kind!r}")


def model_from_descriptor(desc: dict):
    kind = desc.get("kind")
    if kind == "rel":
        return rel_model(int(desc["states"]))
    if kind == "lang":
        return lang_model(tuple(desc["alphabet"]), int(desc["bound"]))
    if kind == "path":
        return path_model(int(desc["nodes"]), int(desc["bound"]))
    raise ValueError(f"unknown model descriptor {desc!r}")


def encode_assignment(model, sorts: dict, env: dict) -> dict:
    return {
        name: model.encode(env[name]) if sort == ELEM else model.encode_test(env[name])
        for name, sort in sorts.items()
    }


def decode_assignment(model, sorts: dict, data: dict) -> dict:
    return {
        name: model.decode(data[name]) if sort == ELEM else model.decode_test(data[name])
        for name, sort in sorts.items()
    }


@dataclass(frozen=True)
class LawVerdict:
    law: str
    polarity: str
    status: str  # holds-exhaustive, holds-sampled, counterexample, not-applicable
    model: Optional[dict] = None
    strategy: Optional[dict] = None
    checked: int = 0
    qualifying: int = 0
    counterexample: Optional[dict] = None
    reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        """Whether the verdict is the expected one for the law's polarity."""
        if self.status == "not-applicable":
            return True
        if self.polarity == MUST_FAIL:
            return self.status == "counterexample"
        return self.status != "counterexample"

    @property
    def outcome(self) -> str:
        if self.ok:
            return "ok"
        return "unexpectedly holds" if self.polarity == MUST_FAIL else "violated"

    def to_dict(self) -> dict:
        out = {
            "law": self.law,
            "polarity": self.polarity,
            "status": self.status,
            "ok": self.ok,
            "model": self.model,
            "strategy": self.strategy,
            "coverage": {"checked": self.checked, "qualifying": self.qualifying},
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reason is not None:
            out["reason"] = self.reason
        return out


class _Compiled:
    def __init__(self, law: Law, model):
        self.sorts = law.sorts
        self.hyp = compile_condition(And(law.hypotheses), model) if law.hypotheses else None
        self.concl = compile_condition(law.conclusion, model)

    def judge(self, env) -> Optional[bool]:
        """None if the hypotheses fail, else whether the conclusion holds."""
        if self.hyp is not None and not self.hyp(env):
            return None
        return self.concl(env)


def _sampler_key(seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:16], "little")


def law_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=_sampler_key(seed, name)))


def _choose_model(law: Law, kind: Optional[str], n: int):
    """The model to check against, or a reason why the law does not apply."""
    if kind is None:
        kind = law.models[0]
    elif kind not in law.models:
        return None, f"law applies to {', '.join(law.models)} only"
    model = model_for(kind, n)
    if law.name in model.exemptions:
        return None, f"exempt in {kind}: {model.exemptions[law.name]}"
    return model, None


def _search_exhaustive(law, compiled, model, cap):
    sorts = compiled.sorts
    radices = [model.num_elements() if s == ELEM else model.num_tests() for s in sorts.values()]
    total = int(np.prod(radices, dtype=object)) if radices else 1
    if total > cap:
        raise CapExceeded(
            f"{law.name}: {total} assignments over {model.describe()} exceed cap {cap} (set KATD_MAX_ASSIGNMENTS)"
        )
    elems = list(model.elements()) if ELEM in sorts.values() else []
    tests = list(model.tests()) if "test" in sorts.values() else []
    domains = [elems if s == ELEM else tests for s in sorts.values()]
    names = list(sorts)
    qualifying = 0
    for index, combo in enumerate(itertools.product(*domains)):
        env = dict(zip(names, combo))
        verdict = compiled.judge(env)
        if verdict is None:
            continue
        qualifying += 1
        if not verdict:
            return index + 1, qualifying, (index, env)
    return total, qualifying, None


def _search_sampled(law, compiled, model, strategy):
    rng = law_rng(strategy.seed, law.name)
    hook = GENERATORS.get(law.generator) if law.generator else None
    sorts = compiled.sorts
    qualifying = 0
    for index in range(strategy.count):
        if hook is not None:
            env = hook(model, rng, sorts)
        else:
            env = {
                name: model.random_element(rng) if s == ELEM else model.random_test(rng)
                for name, s in sorts.items()
            }
        verdict = compiled.judge(env)
        if verdict is None:
            continue
        qualifying += 1
        if not verdict:
            return index + 1, qualifying, (index, env)
    return strategy.count, qualifying, None


def _check_fixtures(law, kind):
    for k, fx in enumerate(law.fixtures):
        if fx.model["kind"] != kind:
            continue
        model = model_from_descriptor(fx.model)
        compiled = _Compiled(law, model)
        env = decode_assignment(model, compiled.sorts, fx.assignment)
        if compiled.judge(env) is False:
            return {
                "source": "fixture",
                "index": k,
                "model": model.describe(),
                "assignment": encode_assignment(model, compiled.sorts, env),
            }
    return None


def check_law(law: Union[Law, str], strategy: Strategy, model_kind: Optional[str] = None) -> LawVerdict:
    """Search for a counterexample to ``law``.

    Assignments failing the hypotheses are skipped.  Pinned fixtures of the
    same model family are checked too: before the search for must-fail laws,
    after it otherwise.
    Raises :class:`CapExceeded` when exhaustive enumeration is too large.
    """
    if isinstance(law, str):
        law = lookup(law)
    base = dict(law=law.name, polarity=law.polarity, strategy=strategy.to_dict())
    model, reason = _choose_model(law, model_kind, strategy.n)
    if model is None:
        return LawVerdict(status="not-applicable", reason=reason, **base)
    if law.polarity == MUST_FAIL:
        # a refuting fixture settles a non-theorem without any search
        payload = _check_fixtures(law, model.kind)
        if payload is not None:
            return LawVerdict(status="counterexample", model=model.describe(), counterexample=payload, **base)
    try:
        compiled = _Compiled(law, model)
        if isinstance(strategy, Exhaustive):
            checked, qualifying, found = _search_exhaustive(law, compiled, model, max_assignments())
        else:
            checked, qualifying, found = _search_sampled(law, compiled, model, strategy)
    except UnsupportedOperation as exc:
        return LawVerdict(status="not-applicable", model=model.describe(), reason=str(exc), **base)
    base.update(model=model.describe(), checked=checked, qualifying=qualifying)
    if found is not None:
        index, env = found
        payload = {
            "source": "search",
            "index": index,
            "model": model.describe(),
            "assignment": encode_assignment(model, compiled.sorts, env),
        }
        return LawVerdict(status="counterexample", counterexample=payload, **base)
    payload = _check_fixtures(law, model.kind)
    if payload is not None:
        return LawVerdict(status="counterexample", counterexample=payload, **base)
    status = "holds-exhaustive" if isinstance(strategy, Exhaustive) else "holds-sampled"
    return LawVerdict(status=status, **base)


def recheck_counterexample(law: Union[Law, str], payload: dict) -> tuple[bool, bool]:
    """Re-evaluate a counterexample: (hypotheses hold, conclusion holds)."""
    if isinstance(law, str):
        law = lookup(law)
    model = model_from_descriptor(payload["model"])
    compiled = _Compiled(law, model)
    env = decode_assignment(model, compiled.sorts, payload["assignment"])
    hyp = compiled.hyp(env) if compiled.hyp is not None else True
    return hyp, compiled.concl(env)


@dataclass
class SuiteResult:
    suite: str
    strategy: Strategy
    model_kind: Optional[str]
    verdicts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "model": self.model_kind,
            "strategy": self.strategy.to_dict(),
            "ok": self.ok,
            "laws": [v.to_dict() for v in self.verdicts],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def run_suite(name: str, strategy: Strategy, model_kind: Optional[str] = None) -> SuiteResult:
    result = SuiteResult(name, strategy, model_kind)
    for law in suite(name):
        result.verdicts.append(check_law(law, strategy, model_kind))
    return result


__all__ = [
    "Exhaustive",
    "Sampled",
    "LawVerdict",
    "SuiteResult",
    "check_law",
    "recheck_counterexample",
    "run_suite",
    "model_for",
    "model_from_descriptor",
    "law_rng",
    "MUST_HOLD",
    "MUST_FAIL",
]
