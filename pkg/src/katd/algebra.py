"""Model-independent modal semiring signature and derived operators.

Every concrete model (relations, truncated languages, bounded paths) subclasses
:class:`Model`.  Values carry their model in a ``model`` attribute, so the
free functions here (:func:`fdia`, :func:`fbox`, :func:`domain`, ...) need no
explicit model argument.

Test transformers (maps from tests to tests) are lifted pointwise into a
semiring of their own; :func:`lfp` and :func:`gfp` compute fixpoints of
isotone transformers on the finite test lattice by plain iteration.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .errors import (
    CapExceeded,
    ModelMismatchError,
    NonIsotoneError,
    UnsupportedOperation,
)

DEFAULT_MAX_TESTSPACE = 2**12


def max_testspace() -> int:
    """Cap on the number of tests enumerated by non-additive checks."""
    raw = os.environ.get("KATD_MAX_TESTSPACE")
    return int(raw) if raw else DEFAULT_MAX_TESTSPACE


class Model:
    """A finite modal Kleene algebra.

    Subclasses supply the element operations, the test algebra and the two
    diamonds.  Everything else in this module is derived from those.
    """

    kind = "abstract"
    #: law names this model is allowed to violate, with the reason
    exemptions: dict[str, str] = {}
    has_omega = False

    # -- elements ---------------------------------------------------------
    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def star(self, a):
        raise NotImplementedError

    def omega(self, a):
        raise UnsupportedOperation(f"{self.kind} model has no omega operator")

    @property
    def top(self):
        return self.omega(self.one)

    def leq(self, a, b):
        return self.add(a, b) == b

    def plus(self, a):
        return self.mul(a, self.star(a))

    # -- tests ------------------------------------------------------------
    test_zero = None
    test_one = None

    def test_add(self, p, q):
        raise NotImplementedError

    def test_mul(self, p, q):
        raise NotImplementedError

    def test_not(self, p):
        raise NotImplementedError

    def test_leq(self, p, q):
        return self.test_add(p, q) == q

    def test_diff(self, p, q):
        return self.test_mul(p, self.test_not(q))

    def test_impl(self, p, q):
        return self.test_add(self.test_not(p), q)

    def test_sum(self, tests: Iterable):
        out = self.test_zero
        for p in tests:
            out = self.test_add(out, p)
        return out

    def embed(self, p):
        """The test as an element below one."""
        raise NotImplementedError

    def atoms(self) -> list:
        raise NotImplementedError

    def tests(self) -> Iterator:
        """All tests, as sums of atom subsets in ascending bitmask order."""
        atoms = self.atoms()
        for mask in range(2 ** len(atoms)):
            yield self.test_sum(atom for k, atom in enumerate(atoms) if mask >> k & 1)

    def num_tests(self) -> int:
        return 2 ** len(self.atoms())

    # -- modalities -------------------------------------------------------
    def fdia(self, a, p):
        raise NotImplementedError

    def bdia(self, a, p):
        raise NotImplementedError

    # -- enumeration / sampling / serialisation ---------------------------
    def elements(self) -> Iterator:
        raise NotImplementedError

    def num_elements(self) -> int:
        raise NotImplementedError

    def element_at(self, index: int):
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    def random_test(self, rng):
        atoms = self.atoms()
        bits = rng.integers(0, 2, size=len(atoms))
        return self.test_sum(atom for atom, bit in zip(atoms, bits) if bit)

    def encode(self, value):
        raise NotImplementedError

    def encode_test(self, p):
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind}


def model_of(*values) -> Model:
    """The common model of ``values``; raises on a mismatch."""
    model = values[0].model
    for v in values[1:]:
        if v.model != model:
            raise ModelMismatchError(f"{v.model.describe()} vs {model.describe()}")
    return model


# ---------------------------------------------------------------------------
# derived operators
# ---------------------------------------------------------------------------


def natural_leq(a, b) -> bool:
    return model_of(a, b).add(a, b) == b


def fdia(a, p):
    return model_of(a, p).fdia(a, p)


def bdia(a, p):
    return model_of(a, p).bdia(a, p)


def fbox(a, p):
    m = model_of(a, p)
    return m.test_not(m.fdia(a, m.test_not(p)))


def bbox(a, p):
    m = model_of(a, p)
    return m.test_not(m.bdia(a, m.test_not(p)))


def domain(a):
    m = a.model
    return m.fdia(a, m.test_one)


def codomain(a):
    m = a.model
    return m.bdia(a, m.test_one)


def max_part(a, p):
    """``p - <a>p``: the states of p with no a-successor in p."""
    m = model_of(a, p)
    return m.test_diff(p, m.fdia(a, p))


def min_part(a, p):
    """``p - <a|p``: the states of p with no a-predecessor in p."""
    m = model_of(a, p)
    return m.test_diff(p, m.bdia(a, p))


def transitive_closure(a):
    return a.model.plus(a)


# ---------------------------------------------------------------------------
# test transformers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestTransformer:
    """A map on tests with the order-theoretic facts known about it."""

    __test__ = False  # not a pytest class

    fn: Callable
    model: Model
    isotone: bool = False
    additive: bool = False
    name: str = field(default="f", compare=False)

    def __call__(self, p):
        return self.fn(p)

    # composition (self after other)
    def __mul__(self, other: TestTransformer) -> TestTransformer:
        _same(self, other)
        f, g = self.fn, other.fn
        return TestTransformer(
            lambda p: f(g(p)),
            self.model,
            isotone=self.isotone and other.isotone,
            additive=self.additive and other.additive,
            name=f"{self.name}{other.name}",
        )

    def __add__(self, other: TestTransformer) -> TestTransformer:
        _same(self, other)
        m, f, g = self.model, self.fn, other.fn
        return TestTransformer(
            lambda p: m.test_add(f(p), g(p)),
            m,
            isotone=self.isotone and other.isotone,
            additive=self.additive and other.additive,
            name=f"({self.name}+{other.name})",
        )

    def __and__(self, other: TestTransformer) -> TestTransformer:
        _same(self, other)
        m, f, g = self.model, self.fn, other.fn
        return TestTransformer(
            lambda p: m.test_mul(f(p), g(p)),
            m,
            isotone=self.isotone and other.isotone,
            name=f"({self.name}⊓{other.name})",
        )

    def __sub__(self, other: TestTransformer) -> TestTransformer:
        _same(self, other)
        m, f, g = self.model, self.fn, other.fn
        return TestTransformer(lambda p: m.test_diff(f(p), g(p)), m, name=f"({self.name}-{other.name})")

    def leq(self, other: TestTransformer) -> bool:
        return transformer_leq(self, other)

    def __le__(self, other: TestTransformer) -> bool:
        return transformer_leq(self, other)

    def equals(self, other: TestTransformer) -> bool:
        return transformer_leq(self, other) and transformer_leq(other, self)


def _same(f: TestTransformer, g: TestTransformer):
    if f.model != g.model:
        raise ModelMismatchError("transformers over different test algebras")


def identity_op(model: Model) -> TestTransformer:
    return TestTransformer(lambda p: p, model, isotone=True, additive=True, name="1")


def zero_op(model: Model) -> TestTransformer:
    z = model.test_zero
    return TestTransformer(lambda p: z, model, isotone=True, additive=True, name="0")


def fdia_op(a) -> TestTransformer:
    m = a.model
    return TestTransformer(lambda p: m.fdia(a, p), m, isotone=True, additive=True, name="⟨a⟩")


def bdia_op(a) -> TestTransformer:
    m = a.model
    return TestTransformer(lambda p: m.bdia(a, p), m, isotone=True, additive=True, name="⟨a|")


def fbox_op(a) -> TestTransformer:
    return TestTransformer(lambda p: fbox(a, p), a.model, isotone=True, name="[a⟩")


def bbox_op(a) -> TestTransformer:
    return TestTransformer(lambda p: bbox(a, p), a.model, isotone=True, name="|a]")


def max_op(a) -> TestTransformer:
    return TestTransformer(lambda p: max_part(a, p), a.model, name="max_a")


def min_op(a) -> TestTransformer:
    return TestTransformer(lambda p: min_part(a, p), a.model, name="min_a")


def test_op(p) -> TestTransformer:
    """``⟨p⟩ = ⟨p|``: meet with a fixed test."""
    m = p.model
    return TestTransformer(lambda q: m.test_mul(p, q), m, isotone=True, additive=True, name="⟨p⟩")


test_op.__test__ = False


def check_testspace(model: Model) -> int:
    count = model.num_tests()
    cap = max_testspace()
    if count > cap:
        raise CapExceeded(f"test space of {count} tests exceeds cap {cap} (set KATD_MAX_TESTSPACE)")
    return count


def transformer_leq(f: TestTransformer, g: TestTransformer) -> bool:
    """Pointwise ``f <= g``.

    Sums of atoms determine additive maps, so when both sides are additive
    only atoms (and the empty test, for free) are checked.  Otherwise every
    test is enumerated, subject to :func:`max_testspace`.
    """
    return transformer_counterexample(f, g) is None


def transformer_counterexample(f: TestTransformer, g: TestTransformer):
    """The first test p with ``f(p) ≰ g(p)`` in atom/enumeration order, or None."""
    _same(f, g)
    m = f.model
    if f.additive and g.additive:
        candidates: Iterable = m.atoms()
    else:
        check_testspace(m)
        candidates = m.tests()
    for p in candidates:
        if not m.test_leq(f(p), g(p)):
            return p
    return None


# ---------------------------------------------------------------------------
# fixpoints
# ---------------------------------------------------------------------------


def _iterate(f: TestTransformer, start):
    if not f.isotone:
        raise NonIsotoneError(f"{f.name} is not flagged isotone")
    bound = len(f.model.atoms()) + 1
    x = start
    for _ in range(bound):
        nxt = f(x)
        if nxt == x:
            return x
        x = nxt
    raise NonIsotoneError(f"no fixpoint of {f.name} after {bound} iterations; map is not isotone")


def lfp(f: TestTransformer):
    """Least fixpoint, iterating upward from the zero test."""
    return _iterate(f, f.model.test_zero)


def gfp(f: TestTransformer):
    """Greatest fixpoint, iterating downward from the unit test."""
    return _iterate(f, f.model.test_one)


# ---------------------------------------------------------------------------
# conformance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple


def _axioms(m: Model):
    add, mul, leq = m.add, m.mul, m.leq
    tl, tn = m.test_leq, m.test_not
    zero, one = m.zero, m.one

    def dia1(a, p, q):
        return tl(m.fdia(a, p), q) == leq(mul(mul(m.embed(tn(q)), a), m.embed(p)), zero)

    def dia1_bwd(a, p, q):
        return tl(m.bdia(a, p), q) == leq(mul(mul(m.embed(p), a), m.embed(tn(q))), zero)

    unary = {
        "add-idem": lambda a: add(a, a) == a,
        "add-zero": lambda a: add(a, zero) == a,
        "mul-one-left": lambda a: mul(one, a) == a,
        "mul-one-right": lambda a: mul(a, one) == a,
        "zero-left": lambda a: mul(zero, a) == zero,
        "zero-right": lambda a: mul(a, zero) == zero,
    }
    binary = {"add-comm": lambda a, b: add(a, b) == add(b, a)}
    ternary = {
        "add-assoc": lambda a, b, c: add(add(a, b), c) == add(a, add(b, c)),
        "mul-assoc": lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)),
        "distrib-left": lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        "distrib-right": lambda a, b, c: mul(add(a, b), c) == add(mul(a, c), mul(b, c)),
    }
    tests = {
        "test-complement": lambda p: m.test_add(p, tn(p)) == m.test_one
        and m.test_mul(p, tn(p)) == m.test_zero
        and m.test_mul(tn(p), p) == m.test_zero,
        "test-below-one": lambda p: leq(m.embed(p), one),
    }
    test_pairs = {"test-meet": lambda p, q: m.embed(m.test_mul(p, q)) == mul(m.embed(p), m.embed(q))}
    modal1 = {"dia1": dia1, "dia1-bwd": dia1_bwd}
    modal2 = {
        "dia2": lambda a, b, p: m.fdia(mul(a, b), p) == m.fdia(a, m.fdia(b, p)),
        "dia2-bwd": lambda a, b, p: m.bdia(mul(a, b), p) == m.bdia(b, m.bdia(a, p)),
    }
    return unary, binary, ternary, tests, test_pairs, modal1, modal2


def check_conformance(model: Model, elements=None, tests=None, triples=None) -> list[Failure]:
    """Check the modal semiring axioms on the given elements and tests.

    Defaults to every element and every test of the model.  ``triples`` may
    restrict the element triples used for the three-variable axioms.  Axioms
    in ``model.exemptions`` are skipped.
    """
    elements = list(model.elements() if elements is None else elements)
    tests = list(model.tests() if tests is None else tests)
    if triples is None:
        triples = itertools.product(elements, repeat=3)
    triples = list(triples)
    unary, binary, ternary, test1, test2, modal1, modal2 = _axioms(model)
    failures: list[Failure] = []

    def run(table, domain):
        for name, check in table.items():
            if name in model.exemptions:
                continue
            for args in domain:
                if not check(*args):
                    failures.append(Failure(name, args))
                    break

    run(unary, [(a,) for a in elements])
    run(binary, list(itertools.product(elements, repeat=2)))
    run(ternary, triples)
    run(test1, [(p,) for p in tests])
    run(test2, list(itertools.product(tests, repeat=2)))
    run(modal1, [(a, p, q) for a in elements for p in tests for q in tests])
    run(modal2, [(a, b, p) for a in elements for b in elements for p in tests])
    return failures
