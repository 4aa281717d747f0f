"""The relation semiring REL(n) on states ``0 .. n-1``.

Relations are stored as one bitset per source state (``rows[x]`` has bit y set
iff ``(x, y)`` is in the relation); state sets are single bitsets.  Both are
immutable and hashable.  Batched counterparts for sweeps over many relations
live in :mod:`katd.kernels`; :func:`to_array` and :func:`from_array` convert.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .algebra import Model
from .errors import ModelMismatchError

MAX_STATES = kernels.MAX_STATES


def _check_n(n: int):
    if not 1 <= n <= MAX_STATES:
        raise ValueError(f"state count must be in 1..{MAX_STATES}, got {n}")


def _bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class StateSet:
    """A set of states; as a test it is the partial identity on those states."""

    n: int
    bits: int

    @classmethod
    def of(cls, n: int, states: Iterable[int]) -> StateSet:
        _check_n(n)
        bits = 0
        for s in states:
            if not 0 <= s < n:
                raise ValueError(f"state {s} out of range for n={n}")
            bits |= 1 << s
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> StateSet:
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> StateSet:
        return cls(n, (1 << n) - 1)

    @property
    def model(self) -> RelModel:
        return rel_model(self.n)

    def _other(self, other: StateSet) -> int:
        if not isinstance(other, StateSet) or other.n != self.n:
            raise ModelMismatchError(f"state sets of different width: {self!r}, {other!r}")
        return other.bits

    def __add__(self, other: StateSet) -> StateSet:
        return StateSet(self.n, self.bits | self._other(other))

    __or__ = __add__

    def __mul__(self, other: StateSet) -> StateSet:
        return StateSet(self.n, self.bits & self._other(other))

    __and__ = __mul__

    def __sub__(self, other: StateSet) -> StateSet:
        return StateSet(self.n, self.bits & ~self._other(other))

    def __invert__(self) -> StateSet:
        return StateSet(self.n, ~self.bits & ((1 << self.n) - 1))

    def __le__(self, other: StateSet) -> bool:
        return self.bits & ~self._other(other) == 0

    def __iter__(self) -> Iterator[int]:
        return _bits_of(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, state: int) -> bool:
        return bool(self.bits >> state & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def to_relation(self) -> FiniteRelation:
        return FiniteRelation(self.n, tuple((1 << x) if self.bits >> x & 1 else 0 for x in range(self.n)))

    def __repr__(self) -> str:
        return f"StateSet({self.n}, {{{', '.join(map(str, self))}}})"


@dataclass(frozen=True, slots=True)
class FiniteRelation:
    """A binary relation on ``n`` states as an n x n boolean matrix."""

    n: int
    rows: tuple

    @classmethod
    def of(cls, n: int, pairs: Iterable[tuple[int, int]]) -> FiniteRelation:
        _check_n(n)
        rows = [0] * n
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair {(x, y)} out of range for n={n}")
            rows[x] |= 1 << y
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> FiniteRelation:
        _check_n(n)
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> FiniteRelation:
        _check_n(n)
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def full(cls, n: int) -> FiniteRelation:
        _check_n(n)
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_index(cls, n: int, index: int) -> FiniteRelation:
        """Inverse of :attr:`index`: bit ``x*n + y`` encodes the pair (x, y)."""
        mask = (1 << n) - 1
        return cls(n, tuple((index >> (x * n)) & mask for x in range(n)))

    @property
    def index(self) -> int:
        return sum(row << (x * self.n) for x, row in enumerate(self.rows))

    @property
    def model(self) -> RelModel:
        return rel_model(self.n)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows) for y in _bits_of(row)]

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def __bool__(self) -> bool:
        return any(self.rows)

    def _other(self, other: FiniteRelation) -> tuple:
        if not isinstance(other, FiniteRelation) or other.n != self.n:
            raise ModelMismatchError(f"relations of different size: {self!r}, {other!r}")
        return other.rows

    def __add__(self, other: FiniteRelation) -> FiniteRelation:
        return FiniteRelation(self.n, tuple(x | y for x, y in zip(self.rows, self._other(other))))

    __or__ = __add__

    def __mul__(self, other: FiniteRelation) -> FiniteRelation:
        return compose(self, other)

    def __le__(self, other: FiniteRelation) -> bool:
        return all(x & ~y == 0 for x, y in zip(self.rows, self._other(other)))

    def star(self) -> FiniteRelation:
        return star(self)

    def plus(self) -> FiniteRelation:
        return compose(self, star(self))

    def omega(self) -> FiniteRelation:
        return omega(self)

    def converse(self) -> FiniteRelation:
        return converse(self)

    def __repr__(self) -> str:
        return f"FiniteRelation({self.n}, {self.pairs()})"


def compose(a: FiniteRelation, b: FiniteRelation) -> FiniteRelation:
    """Relational composition: (x, y) iff (x, z) in a and (z, y) in b for some z."""
    brows = a._other(b)
    out = []
    for row in a.rows:
        acc = 0
        while row:
            low = row & -row
            acc |= brows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return FiniteRelation(a.n, tuple(out))


@functools.lru_cache(maxsize=1 << 16)
def _star_rows(n: int, rows: tuple) -> tuple:
    out = list(rows)
    for k in range(n):
        bk, rk = 1 << k, out[k]
        for x in range(n):
            if out[x] & bk:
                out[x] |= rk
    return tuple(r | (1 << x) for x, r in enumerate(out))


def star(a: FiniteRelation) -> FiniteRelation:
    """Reflexive transitive closure (Warshall on bit rows)."""
    return FiniteRelation(a.n, _star_rows(a.n, a.rows))


@functools.lru_cache(maxsize=1 << 16)
def _omega_rows(n: int, rows: tuple) -> tuple:
    a = FiniteRelation(n, rows)
    x = FiniteRelation.full(n)
    while True:
        nxt = compose(a, x)
        if nxt == x:
            return x.rows
        x = nxt


def omega(a: FiniteRelation) -> FiniteRelation:
    """Greatest x with x <= a.x, by downward iteration from the full relation."""
    return FiniteRelation(a.n, _omega_rows(a.n, a.rows))


def fdia(a: FiniteRelation, p: StateSet) -> StateSet:
    """Preimage of p under a."""
    if p.n != a.n:
        raise ModelMismatchError(f"relation on {a.n} states, state set of width {p.n}")
    target = p.bits
    bits = 0
    for x, row in enumerate(a.rows):
        if row & target:
            bits |= 1 << x
    return StateSet(a.n, bits)


def bdia(a: FiniteRelation, p: StateSet) -> StateSet:
    """Image of p under a."""
    if p.n != a.n:
        raise ModelMismatchError(f"relation on {a.n} states, state set of width {p.n}")
    bits = 0
    for x in _bits_of(p.bits):
        bits |= a.rows[x]
    return StateSet(a.n, bits)


def converse(a: FiniteRelation) -> FiniteRelation:
    rows = [0] * a.n
    for x, y in a.pairs():
        rows[y] |= 1 << x
    return FiniteRelation(a.n, tuple(rows))


@dataclass(frozen=True)
class RelModel(Model):
    """REL(n): all relations on n states with union, composition and closure."""

    n: int

    kind = "rel"
    has_omega = True

    def __post_init__(self):
        _check_n(self.n)

    @property
    def zero(self):
        return FiniteRelation.empty(self.n)

    @property
    def one(self):
        return FiniteRelation.identity(self.n)

    @property
    def top(self):
        return FiniteRelation.full(self.n)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return compose(a, b)

    def leq(self, a, b):
        return a <= b

    def star(self, a):
        return star(a)

    def omega(self, a):
        return omega(a)

    @property
    def test_zero(self):
        return StateSet.empty(self.n)

    @property
    def test_one(self):
        return StateSet.full(self.n)

    def test_add(self, p, q):
        return p + q

    def test_mul(self, p, q):
        return p * q

    def test_not(self, p):
        return ~p

    def test_leq(self, p, q):
        return p <= q

    def embed(self, p):
        return p.to_relation()

    def atoms(self):
        return [StateSet(self.n, 1 << x) for x in range(self.n)]

    def tests(self):
        return (StateSet(self.n, bits) for bits in range(1 << self.n))

    def num_tests(self):
        return 1 << self.n

    def fdia(self, a, p):
        return fdia(a, p)

    def bdia(self, a, p):
        return bdia(a, p)

    def elements(self):
        return (FiniteRelation.from_index(self.n, k) for k in range(self.num_elements()))

    def num_elements(self):
        return 1 << (self.n * self.n)

    def element_at(self, index):
        return FiniteRelation.from_index(self.n, index)

    def random_element(self, rng, density=0.5):
        rows = random_relations_array(self.n, 1, rng, density)[0]
        return FiniteRelation(self.n, tuple(int(v) for v in rows))

    def test_at(self, index):
        return StateSet(self.n, index)

    def encode(self, value):
        return [list(p) for p in value.pairs()]

    def encode_test(self, p):
        return list(p)

    def decode(self, data):
        return FiniteRelation.of(self.n, (tuple(p) for p in data))

    def decode_test(self, data):
        return StateSet.of(self.n, data)

    def describe(self):
        return {"kind": "rel", "states": self.n}


@functools.lru_cache(maxsize=None)
def rel_model(n: int) -> RelModel:
    return RelModel(n)


# ---------------------------------------------------------------------------
# batch conversion
# ---------------------------------------------------------------------------


def to_array(relations: Iterable[FiniteRelation]) -> np.ndarray:
    relations = list(relations)
    if not relations:
        raise ValueError("empty batch")
    n = relations[0].n
    return np.array([r.rows for r in relations], dtype=np.uint64).reshape(len(relations), n)


def from_array(rows: np.ndarray) -> list[FiniteRelation]:
    n = rows.shape[1]
    return [FiniteRelation(n, tuple(int(v) for v in r)) for r in rows]


def sets_from_array(bits: np.ndarray, n: int) -> list[StateSet]:
    return [StateSet(n, int(b)) for b in bits]


def all_relations_array(n: int) -> np.ndarray:
    """Every relation of REL(n) in ascending index order, as row bitsets."""
    _check_n(n)
    if n * n > 24:
        raise ValueError(f"REL({n}) has 2^{n * n} relations; too many to materialise")
    k = np.arange(1 << (n * n), dtype=np.uint64)
    mask = np.uint64((1 << n) - 1)
    return np.stack([(k >> np.uint64(x * n)) & mask for x in range(n)], axis=1)


def random_relations_array(n: int, count: int, rng, density=0.5) -> np.ndarray:
    _check_n(n)
    bits = rng.random((count, n, n)) < density
    weights = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
    return np.bitwise_or.reduce(np.where(bits, weights, np.uint64(0)), axis=2)
