"""Terms and conditions over the modal Kleene algebra signature.

Terms are built with ordinary Python operators::

    a, b = elem("a"), elem("b")
    p = test("p")
    fdia(star(a), p) + p        # a test term
    a * star(a + b)             # an element term

Two sorts exist, elements and tests; every constructor checks sorts.  Terms
compile to closures over an environment dict for fast repeated evaluation.
Conditions (``Leq``, ``Eq``, ``Pred`` and the connectives) compile the same
way and return booleans.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable

from .. import algebra
from ..algebra import (
    TestTransformer,
    gfp,
    lfp,
    max_part,
    min_part,
)
from ..errors import KatdError, UnsupportedOperation

ELEM = "elem"
TEST = "test"


class SortError(KatdError, TypeError):
    """A term was built or bound with the wrong sort."""


class UnboundVariable(KatdError, KeyError):
    """An assignment lacks a free variable of the term."""


# kind -> (result sort, argument sorts)
SIGNATURE = {
    "var": (ELEM, ()),
    "zero": (ELEM, ()),
    "one": (ELEM, ()),
    "top": (ELEM, ()),
    "sum": (ELEM, (ELEM, ELEM)),
    "prod": (ELEM, (ELEM, ELEM)),
    "star": (ELEM, (ELEM,)),
    "plus": (ELEM, (ELEM,)),
    "omega": (ELEM, (ELEM,)),
    "embed": (ELEM, (TEST,)),
    "nrm": (ELEM, (ELEM,)),
    "tvar": (TEST, ()),
    "tzero": (TEST, ()),
    "tone": (TEST, ()),
    "not": (TEST, (TEST,)),
    "tsum": (TEST, (TEST, TEST)),
    "tprod": (TEST, (TEST, TEST)),
    "diff": (TEST, (TEST, TEST)),
    "impl": (TEST, (TEST, TEST)),
    "fdia": (TEST, (ELEM, TEST)),
    "bdia": (TEST, (ELEM, TEST)),
    "fbox": (TEST, (ELEM, TEST)),
    "bbox": (TEST, (ELEM, TEST)),
    "dom": (TEST, (ELEM,)),
    "cod": (TEST, (ELEM,)),
    "maxpart": (TEST, (ELEM, TEST)),
    "minpart": (TEST, (ELEM, TEST)),
    "div": (TEST, (ELEM,)),
    "conv": (TEST, (ELEM,)),
    "mu_h": (TEST, (ELEM, TEST)),
    "nu_h": (TEST, (ELEM, TEST)),
}


@dataclass(frozen=True)
class Term:
    kind: str
    args: tuple = ()
    name: str | None = None

    def __post_init__(self):
        if self.kind not in SIGNATURE:
            raise ValueError(f"unknown term kind {self.kind!r}")
        _, want = SIGNATURE[self.kind]
        if len(want) != len(self.args):
            raise SortError(f"{self.kind} takes {len(want)} arguments, got {len(self.args)}")
        for s, arg in zip(want, self.args):
            if not isinstance(arg, Term) or arg.sort != s:
                raise SortError(f"{self.kind} expects a {s} term, got {arg!r}")

    @property
    def sort(self) -> str:
        return SIGNATURE[self.kind][0]

    # -- operators --------------------------------------------------------
    def __add__(self, other: Term) -> Term:
        _same_sort(self, other)
        return Term("sum" if self.sort == ELEM else "tsum", (self, other))

    def __mul__(self, other: Term) -> Term:
        _same_sort(self, other)
        return Term("prod" if self.sort == ELEM else "tprod", (self, other))

    def __sub__(self, other: Term) -> Term:
        return Term("diff", (self, other))

    def __invert__(self) -> Term:
        return Term("not", (self,))

    def __rshift__(self, other: Term) -> Term:
        return Term("impl", (self, other))

    def __str__(self) -> str:
        return render(self)

    def free_vars(self) -> dict[str, str]:
        out: dict[str, str] = {}
        _collect(self, out)
        return out


def _same_sort(x: Term, y: Term):
    if not isinstance(y, Term) or x.sort != y.sort:
        raise SortError(f"cannot combine {x!r} with {y!r}")


def _collect(t: Term, out: dict):
    if t.kind in ("var", "tvar"):
        prev = out.setdefault(t.name, t.sort)
        if prev != t.sort:
            raise SortError(f"variable {t.name} used as both {prev} and {t.sort}")
    for a in t.args:
        _collect(a, out)


def merge_sorts(*parts: dict) -> dict:
    out: dict = {}
    for part in parts:
        for name, sort in part.items():
            prev = out.setdefault(name, sort)
            if prev != sort:
                raise SortError(f"variable {name} used as both {prev} and {sort}")
    return out


# -- constructors --------------------------------------------------------


def elem(name: str) -> Term:
    return Term("var", name=name)


def test(name: str) -> Term:
    return Term("tvar", name=name)


test.__test__ = False

ZERO = Term("zero")
ONE = Term("one")
TOP = Term("top")
TZERO = Term("tzero")
TONE = Term("tone")


def _unary(kind):
    def build(x: Term) -> Term:
        return Term(kind, (x,))

    build.__name__ = kind
    return build


def _binary(kind):
    def build(x: Term, y: Term) -> Term:
        return Term(kind, (x, y))

    build.__name__ = kind
    return build


star = _unary("star")
plus = _unary("plus")
omega = _unary("omega")
embed = _unary("embed")
nrm = _unary("nrm")
dom = _unary("dom")
cod = _unary("cod")
div = _unary("div")
conv = _unary("conv")
fdia = _binary("fdia")
bdia = _binary("bdia")
fbox = _binary("fbox")
bbox = _binary("bbox")
maxpart = _binary("maxpart")
minpart = _binary("minpart")
mu_h = _binary("mu_h")
nu_h = _binary("nu_h")


# -- compilation ---------------------------------------------------------


def _h(m, a, q) -> TestTransformer:
    # h_q(x) = q + <a>x
    return TestTransformer(lambda x: m.test_add(q, m.fdia(a, x)), m, isotone=True, name="h")


def compile_term(t: Term, m) -> Callable[[dict], object]:
    """A closure evaluating ``t`` in model ``m`` under an environment dict."""
    k = t.kind
    if k in ("var", "tvar"):
        name, sort = t.name, t.sort

        def var(env):
            try:
                return env[name]
            except KeyError:
                raise UnboundVariable(f"variable {name} ({sort}) is unbound") from None

        return var
    if k in ("zero", "one", "tzero", "tone", "top"):
        if k == "top" and not m.has_omega:
            raise UnsupportedOperation(f"{m.kind} model has no top element")
        value = {"zero": m.zero, "one": m.one, "tzero": m.test_zero, "tone": m.test_one}.get(k)
        if k == "top":
            value = m.top
        return lambda env: value
    if k == "omega" and not m.has_omega:
        raise UnsupportedOperation(f"{m.kind} model has no omega operator")
    fs = [compile_term(a, m) for a in t.args]
    op = _ops(m)[k]
    if len(fs) == 1:
        (f,) = fs
        return lambda env: op(f(env))
    f, g = fs
    return lambda env: op(f(env), g(env))


def _ops(m):
    from ..termination import divergence, convergence, normaliser

    return {
        "sum": m.add,
        "prod": m.mul,
        "star": m.star,
        "plus": m.plus,
        "omega": m.omega,
        "embed": m.embed,
        "nrm": normaliser,
        "not": m.test_not,
        "tsum": m.test_add,
        "tprod": m.test_mul,
        "diff": m.test_diff,
        "impl": m.test_impl,
        "fdia": m.fdia,
        "bdia": m.bdia,
        "fbox": algebra.fbox,
        "bbox": algebra.bbox,
        "dom": lambda a: m.fdia(a, m.test_one),
        "cod": lambda a: m.bdia(a, m.test_one),
        "maxpart": max_part,
        "minpart": min_part,
        "div": divergence,
        "conv": convergence,
        "mu_h": lambda a, q: lfp(_h(m, a, q)),
        "nu_h": lambda a, q: gfp(_h(m, a, q)),
    }


def evaluate(t: Term, assignment: dict, m):
    """Value of ``t`` in model ``m``; checks that bound values have the right sort."""
    for name, sort in t.free_vars().items():
        if name not in assignment:
            raise UnboundVariable(f"variable {name} ({sort}) is unbound")
        _check_value(m, name, sort, assignment[name])
    return compile_term(t, m)(assignment)


def _check_value(m, name, sort, value):
    if getattr(value, "model", None) != m:
        raise SortError(f"value for {name} does not belong to {m.describe()}")
    if sort != TEST:
        return
    try:
        is_test = m.test_leq(value, m.test_one)
    except KatdError:
        is_test = False
    if not is_test:
        raise SortError(f"value for test variable {name} is not a test")


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------


class Condition:
    def free_vars(self) -> dict[str, str]:
        raise NotImplementedError

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Leq(Condition):
    lhs: Term
    rhs: Term

    def __post_init__(self):
        _same_sort(self.lhs, self.rhs)

    def free_vars(self):
        return merge_sorts(self.lhs.free_vars(), self.rhs.free_vars())


@dataclass(frozen=True)
class Eq(Condition):
    lhs: Term
    rhs: Term

    def __post_init__(self):
        _same_sort(self.lhs, self.rhs)

    def free_vars(self):
        return merge_sorts(self.lhs.free_vars(), self.rhs.free_vars())


@dataclass(frozen=True)
class Pred(Condition):
    """A named predicate on element terms, see :data:`PREDICATES`."""

    name: str
    args: tuple

    def __post_init__(self):
        if self.name not in PREDICATES:
            raise ValueError(f"unknown predicate {self.name!r}")
        arity = PREDICATES[self.name][0]
        if len(self.args) != arity:
            raise SortError(f"{self.name} takes {arity} arguments")
        for a in self.args:
            if a.sort != ELEM:
                raise SortError(f"{self.name} expects element terms")

    def free_vars(self):
        return merge_sorts(*(a.free_vars() for a in self.args))


@dataclass(frozen=True)
class Not(Condition):
    body: Condition

    def free_vars(self):
        return self.body.free_vars()


@dataclass(frozen=True)
class And(Condition):
    parts: tuple

    def free_vars(self):
        return merge_sorts(*(c.free_vars() for c in self.parts))


@dataclass(frozen=True)
class Iff(Condition):
    lhs: Condition
    rhs: Condition

    def free_vars(self):
        return merge_sorts(self.lhs.free_vars(), self.rhs.free_vars())


@dataclass(frozen=True)
class Implies(Condition):
    """Only for use under :class:`Forall`; laws keep implications as hypotheses."""

    lhs: Condition
    rhs: Condition

    def free_vars(self):
        return merge_sorts(self.lhs.free_vars(), self.rhs.free_vars())


@dataclass(frozen=True)
class Forall(Condition):
    """Universal quantification over test variables, ranging over all tests."""

    names: tuple
    body: Condition

    def free_vars(self):
        inner = self.body.free_vars()
        for n in self.names:
            if inner.get(n, TEST) != TEST:
                raise SortError(f"bound variable {n} must be a test")
        return {k: v for k, v in inner.items() if k not in self.names}


def conj(*parts: Condition) -> Condition:
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _predicates():
    from .. import rewriting as rw
    from .. import termination as tm

    def unique_h_fixpoints(a):
        m = a.model
        return all(lfp(_h(m, a, q)) == gfp(_h(m, a, q)) for q in m.tests())

    def transitive(a):
        m = a.model
        return m.leq(m.mul(a, a), a)

    return {
        "noetherian": (1, tm.is_noetherian),
        "postfix_noetherian": (1, tm.postfix_noetherian),
        "omega_noetherian": (1, tm.is_omega_noetherian),
        "d_transitive": (1, tm.is_d_transitive),
        "transitive": (1, transitive),
        "pre_loebian": (1, tm.is_pre_loebian),
        "loebian": (1, tm.is_loebian),
        "unique_h_fixpoints": (1, unique_h_fixpoints),
        "quasi": (2, rw.d_quasi_commutes),
        "local_semi": (2, rw.locally_d_semi_commutes),
        "semi": (2, rw.d_semi_commutes),
        "locally_d_commutes": (2, rw.locally_d_commutes),
        "d_commutes": (2, rw.d_commutes),
        "d_confluent": (1, lambda a: rw.d_commutes(a, a)),
        "d_deterministic": (1, rw.is_d_deterministic),
    }


class _LazyPredicates(dict):
    # filled on first use to avoid an import cycle with termination/rewriting
    def _fill(self):
        if not dict.__len__(self):
            self.update(_predicates())

    def __getitem__(self, key):
        self._fill()
        return dict.__getitem__(self, key)

    def __contains__(self, key):
        self._fill()
        return dict.__contains__(self, key)

    def keys(self):
        self._fill()
        return dict.keys(self)


PREDICATES = _LazyPredicates()


def compile_condition(c: Condition, m) -> Callable[[dict], bool]:
    if isinstance(c, (Leq, Eq)):
        f, g = compile_term(c.lhs, m), compile_term(c.rhs, m)
        if isinstance(c, Eq):
            return lambda env: f(env) == g(env)
        leq = m.leq if c.lhs.sort == ELEM else m.test_leq
        return lambda env: leq(f(env), g(env))
    if isinstance(c, Pred):
        fn = PREDICATES[c.name][1]
        fs = [compile_term(a, m) for a in c.args]
        return lambda env: fn(*(f(env) for f in fs))
    if isinstance(c, Not):
        f = compile_condition(c.body, m)
        return lambda env: not f(env)
    if isinstance(c, And):
        fs = [compile_condition(x, m) for x in c.parts]
        return lambda env: all(f(env) for f in fs)
    if isinstance(c, Iff):
        f, g = compile_condition(c.lhs, m), compile_condition(c.rhs, m)
        return lambda env: f(env) == g(env)
    if isinstance(c, Implies):
        f, g = compile_condition(c.lhs, m), compile_condition(c.rhs, m)
        return lambda env: (not f(env)) or g(env)
    if isinstance(c, Forall):
        f = compile_condition(c.body, m)
        names = c.names
        tests = list(m.tests())

        def forall(env):
            local = dict(env)
            for combo in itertools.product(tests, repeat=len(names)):
                local.update(zip(names, combo))
                if not f(local):
                    return False
            return True

        return forall
    raise TypeError(f"not a condition: {c!r}")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

_PREC = {"sum": 1, "tsum": 1, "diff": 1, "impl": 0, "prod": 2, "tprod": 2}
_POSTFIX = {"star": "*", "plus": "⁺", "omega": "^ω"}
_BRACKETS = {"fdia": ("⟨", "⟩"), "bdia": ("⟨", "|"), "fbox": ("[", "⟩"), "bbox": ("|", "]")}
_PREFIX = {"dom": "dom ", "cod": "cod ", "div": "∇", "conv": "⊳", "nrm": "nrm ", "not": "¬"}
_INFIX = {"sum": "+", "tsum": "+", "diff": "−", "impl": "→", "prod": "", "tprod": ""}


def _atomic(t: Term) -> bool:
    return t.kind in ("var", "tvar", "zero", "one", "top", "tzero", "tone") or t.kind in _POSTFIX


def _wrap(t: Term, min_prec: int) -> str:
    s = _render_term(t)
    prec = _PREC.get(t.kind)
    if prec is not None and prec < min_prec:
        return f"({s})"
    return s


def _render_term(t: Term) -> str:
    k = t.kind
    if k in ("var", "tvar"):
        return t.name
    if k in ("zero", "tzero"):
        return "0"
    if k in ("one", "tone"):
        return "1"
    if k == "top":
        return "⊤"
    if k in _POSTFIX:
        (x,) = t.args
        inner = _render_term(x)
        return (inner if _atomic(x) else f"({inner})") + _POSTFIX[k]
    if k == "embed":
        return _render_term(t.args[0])
    if k in _PREFIX:
        (x,) = t.args
        inner = _render_term(x)
        simple = _atomic(x) or x.kind in _BRACKETS or x.kind in _PREFIX
        return _PREFIX[k] + (inner if simple else f"({inner})")
    if k in _BRACKETS:
        a, p = t.args
        left, right = _BRACKETS[k]
        arg = _render_term(p)
        if not (_atomic(p) or p.kind in _BRACKETS or p.kind in _PREFIX):
            arg = f"({arg})"
        return f"{left}{_render_term(a)}{right}{arg}"
    if k in ("maxpart", "minpart"):
        a, p = t.args
        sub = _render_term(a)
        sub = sub if _atomic(a) else f"({sub})"
        return f"{k[:3]}_{sub} {_wrap(p, 3)}"
    if k in ("mu_h", "nu_h"):
        a, q = t.args
        return f"{'μ' if k == 'mu_h' else 'ν'}(x ↦ {_render_term(q)}+⟨{_render_term(a)}⟩x)"
    prec = _PREC[k]
    x, y = t.args
    # left-assoc: right operand needs strictly higher precedence unless the op is associative
    right_min = prec if k in ("sum", "tsum", "prod", "tprod") else prec + 1
    sep = _INFIX[k]
    if k in ("prod", "tprod"):
        lhs, rhs = _wrap(x, prec), _wrap(y, right_min)
        last, first = re.search(r"\w+$", lhs), re.match(r"\w+", rhs)
        # juxtapose single letters, separate words like "nrm a·nrm a"
        if last and first and (len(last.group()) > 1 or len(first.group()) > 1):
            sep = "·"
        return f"{lhs}{sep}{rhs}"
    return f"{_wrap(x, prec)}{sep}{_wrap(y, right_min)}"


def _render_cond(c: Condition) -> str:
    if isinstance(c, Leq):
        return f"{_render_term(c.lhs)} ≤ {_render_term(c.rhs)}"
    if isinstance(c, Eq):
        return f"{_render_term(c.lhs)} = {_render_term(c.rhs)}"
    if isinstance(c, Pred):
        return f"{c.name}({', '.join(_render_term(a) for a in c.args)})"
    if isinstance(c, Not):
        return f"¬({_render_cond(c.body)})"
    if isinstance(c, And):
        return " ∧ ".join(_paren(x) for x in c.parts)
    if isinstance(c, Iff):
        return f"{_paren(c.lhs)} ⇔ {_paren(c.rhs)}"
    if isinstance(c, Implies):
        return f"{_paren(c.lhs)} ⇒ {_paren(c.rhs)}"
    if isinstance(c, Forall):
        return f"∀{','.join(c.names)}. {_render_cond(c.body)}"
    raise TypeError(c)


def _paren(c: Condition) -> str:
    s = _render_cond(c)
    return f"({s})" if isinstance(c, (And, Iff, Implies, Forall)) else s


def render(x) -> str:
    return _render_term(x) if isinstance(x, Term) else _render_cond(x)
