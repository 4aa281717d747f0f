"""Law library and counterexample search."""

from .engine import (
    Exhaustive,
    LawVerdict,
    Sampled,
    SuiteResult,
    check_law,
    model_for,
    model_from_descriptor,
    recheck_counterexample,
    run_suite,
)
from .expr import evaluate, render
from .library import MUST_FAIL, MUST_HOLD, SUITES, Law, builtin_library, export_json, lookup, suite

__all__ = [
    "Exhaustive",
    "Law",
    "LawVerdict",
    "MUST_FAIL",
    "MUST_HOLD",
    "SUITES",
    "Sampled",
    "SuiteResult",
    "builtin_library",
    "check_law",
    "evaluate",
    "export_json",
    "lookup",
    "model_for",
    "model_from_descriptor",
    "recheck_counterexample",
    "render",
    "run_suite",
    "suite",
]
