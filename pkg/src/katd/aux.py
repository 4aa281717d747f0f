"""Two small carriers that separate notions REL cannot.

``TruncatedLanguage``: languages of words of length at most L.  Products
longer than L are dropped, which keeps concatenation associative and
distributive.  The tests are just the empty language and {ε}, so a nonempty
language always diverges even though its omega is empty when ε is absent.

``BoundedPathSet``: sets of node sequences of length at most K under fusion
(glue the last node of one path to the first node of the next).  The single
loop path ⟨n,n⟩ is d-transitive without being transitive.

Truncation breaks (dia2) once intermediate products overflow the bound; both
models list such laws in ``exemptions``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .algebra import Model, fdia_op, gfp
from .errors import ModelMismatchError

_TRUNCATION = "products past the length bound are dropped"

AUX_EXEMPTIONS = {
    "dia2": _TRUNCATION,
    "dia2-bwd": _TRUNCATION,
    "box2": _TRUNCATION,
    "box2-bwd": _TRUNCATION,
}


# ---------------------------------------------------------------------------
# truncated languages
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TruncatedLanguage:
    alphabet: tuple
    bound: int
    words: frozenset

    @classmethod
    def of(cls, alphabet: Iterable[str], bound: int, words: Iterable[str]) -> TruncatedLanguage:
        alphabet = tuple(alphabet)
        words = frozenset(words)
        for w in words:
            if len(w) > bound:
                raise ValueError(f"word {w!r} exceeds bound {bound}")
            if any(ch not in alphabet for ch in w):
                raise ValueError(f"word {w!r} is not over alphabet {alphabet}")
        return cls(alphabet, bound, words)

    @property
    def model(self) -> LangModel:
        return lang_model(self.alphabet, self.bound)

    def _check(self, other: TruncatedLanguage):
        if not isinstance(other, TruncatedLanguage) or (other.alphabet, other.bound) != (self.alphabet, self.bound):
            raise ModelMismatchError(f"languages over different alphabet or bound: {self!r}, {other!r}")

    def __add__(self, other):
        self._check(other)
        return TruncatedLanguage(self.alphabet, self.bound, self.words | other.words)

    def __mul__(self, other):
        return lang_concat(self, other)

    def __le__(self, other):
        self._check(other)
        return self.words <= other.words

    def __bool__(self):
        return bool(self.words)

    def __repr__(self):
        shown = ", ".join(repr(w) if w else "ε" for w in sorted(self.words, key=lambda w: (len(w), w)))
        return f"TruncatedLanguage(L={self.bound}, {{{shown}}})"


def lang_concat(x: TruncatedLanguage, y: TruncatedLanguage) -> TruncatedLanguage:
    """{vw : v in x, w in y, |vw| <= L}."""
    x._check(y)
    L = x.bound
    words = frozenset(v + w for v in x.words for w in y.words if len(v) + len(w) <= L)
    return TruncatedLanguage(x.alphabet, L, words)


def _closure(one, a, mul, add):
    acc = one
    while True:
        nxt = add(one, mul(a, acc))
        if nxt == acc:
            return acc
        acc = nxt


def lang_star(x: TruncatedLanguage) -> TruncatedLanguage:
    """Union of truncated powers of x."""
    m = x.model
    return _closure(m.one, x, lang_concat, TruncatedLanguage.__add__)


def lang_omega(x: TruncatedLanguage) -> TruncatedLanguage:
    """Greatest y <= x.y among languages of words up to the bound."""
    y = x.model.top
    while True:
        nxt = lang_concat(x, y)
        if nxt == y:
            return y
        y = nxt


def lang_divergence(x: TruncatedLanguage) -> TruncatedLanguage:
    """Divergence over the two-point test algebra {∅, {ε}}."""
    return gfp(fdia_op(x))


@dataclass(frozen=True)
class LangModel(Model):
    alphabet: tuple
    bound: int

    kind = "lang"
    has_omega = True
    exemptions = AUX_EXEMPTIONS

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be non-negative")
        if len(set(self.alphabet)) != len(self.alphabet) or any(len(s) != 1 for s in self.alphabet):
            raise ValueError(f"alphabet must be distinct single characters: {self.alphabet}")

    @functools.cached_property
    def universe(self) -> tuple:
        """All words up to the bound, shortest first then lexicographic."""
        words = [""]
        for k in range(1, self.bound + 1):
            words.extend("".join(t) for t in itertools.product(self.alphabet, repeat=k))
        return tuple(words)

    def lang(self, words: Iterable[str]) -> TruncatedLanguage:
        return TruncatedLanguage.of(self.alphabet, self.bound, words)

    @property
    def zero(self):
        return TruncatedLanguage(self.alphabet, self.bound, frozenset())

    @property
    def one(self):
        return TruncatedLanguage(self.alphabet, self.bound, frozenset({""}))

    @property
    def top(self):
        return TruncatedLanguage(self.alphabet, self.bound, frozenset(self.universe))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return lang_concat(a, b)

    def leq(self, a, b):
        return a <= b

    def star(self, a):
        return lang_star(a)

    def omega(self, a):
        return lang_omega(a)

    test_zero = zero
    test_one = one

    def test_add(self, p, q):
        return p + q

    def test_mul(self, p, q):
        return lang_concat(p, q)

    def test_not(self, p):
        return self.zero if p.words else self.one

    def test_leq(self, p, q):
        return p <= q

    def embed(self, p):
        return p

    def atoms(self):
        return [self.one]

    def fdia(self, a, p):
        return self.one if lang_concat(a, p).words else self.zero

    def bdia(self, a, p):
        return self.one if lang_concat(p, a).words else self.zero

    def num_elements(self):
        return 1 << len(self.universe)

    def element_at(self, index):
        u = self.universe
        return TruncatedLanguage(self.alphabet, self.bound, frozenset(u[k] for k in range(len(u)) if index >> k & 1))

    def elements(self):
        return (self.element_at(k) for k in range(self.num_elements()))

    def index_of(self, x: TruncatedLanguage) -> int:
        pos = {w: k for k, w in enumerate(self.universe)}
        return sum(1 << pos[w] for w in x.words)

    def random_element(self, rng, density=0.5):
        keep = rng.random(len(self.universe)) < density
        return TruncatedLanguage(self.alphabet, self.bound, frozenset(w for w, k in zip(self.universe, keep) if k))

    def encode(self, value):
        return sorted(value.words, key=lambda w: (len(w), w))

    encode_test = encode

    def decode(self, data):
        return self.lang(data)

    decode_test = decode

    def describe(self):
        return {"kind": "lang", "alphabet": "".join(self.alphabet), "bound": self.bound}


@functools.lru_cache(maxsize=None)
def lang_model(alphabet: tuple, bound: int) -> LangModel:
    return LangModel(tuple(alphabet), bound)


def product_table(model: LangModel) -> np.ndarray:
    """Cayley table of truncated concatenation over all element indices."""
    count = model.num_elements()
    if count > 1 << 12:
        raise ValueError(f"{count} languages: table too large")
    u = model.universe
    pos = {w: k for k, w in enumerate(u)}
    # product of single words, -1 when it overflows the bound
    word_prod = [[pos.get(v + w, -1) for w in u] for v in u]
    # products of single words with arbitrary languages, built per word
    word_times = np.zeros((len(u), count), dtype=np.int64)
    for i in range(len(u)):
        for j in range(len(u)):
            k = word_prod[i][j]
            if k >= 0:
                has_j = (np.arange(count) >> j) & 1
                word_times[i] |= has_j << k
    table = np.zeros((count, count), dtype=np.int64)
    for x in range(count):
        for i in range(len(u)):
            if x >> i & 1:
                table[x] |= word_times[i]
    return table


# ---------------------------------------------------------------------------
# bounded path sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BoundedPathSet:
    nodes: int
    bound: int
    paths: frozenset

    @classmethod
    def of(cls, nodes: int, bound: int, paths: Iterable[Iterable[int]]) -> BoundedPathSet:
        out = set()
        for p in paths:
            p = tuple(p)
            if not 1 <= len(p) <= bound:
                raise ValueError(f"path {p} length outside 1..{bound}")
            if any(not 0 <= v < nodes for v in p):
                raise ValueError(f"path {p} has a node outside 0..{nodes - 1}")
            out.add(p)
        return cls(nodes, bound, frozenset(out))

    @property
    def model(self) -> PathModel:
        return path_model(self.nodes, self.bound)

    def _check(self, other):
        if not isinstance(other, BoundedPathSet) or (other.nodes, other.bound) != (self.nodes, self.bound):
            raise ModelMismatchError(f"path sets over different universes: {self!r}, {other!r}")

    def __add__(self, other):
        self._check(other)
        return BoundedPathSet(self.nodes, self.bound, self.paths | other.paths)

    def __mul__(self, other):
        return fusion(self, other)

    def __le__(self, other):
        self._check(other)
        return self.paths <= other.paths

    def __bool__(self):
        return bool(self.paths)

    def node_set(self) -> frozenset:
        """The nodes of a test (a set of length-one paths)."""
        return frozenset(p[0] for p in self.paths if len(p) == 1)

    def __repr__(self):
        shown = ", ".join("⟨" + ",".join(map(str, p)) + "⟩" for p in sorted(self.paths, key=lambda p: (len(p), p)))
        return f"BoundedPathSet(K={self.bound}, {{{shown}}})"


def fusion(x: BoundedPathSet, y: BoundedPathSet) -> BoundedPathSet:
    """Glue u in x to v in y when u ends where v starts; drop results longer than K."""
    x._check(y)
    K = x.bound
    by_start: dict[int, list] = {}
    for v in y.paths:
        by_start.setdefault(v[0], []).append(v)
    out = frozenset(u + v[1:] for u in x.paths for v in by_start.get(u[-1], ()) if len(u) + len(v) - 1 <= K)
    return BoundedPathSet(x.nodes, K, out)


def path_fdia(a: BoundedPathSet, p) -> frozenset:
    """Nodes from which some path of a ends in p (a test or an iterable of nodes)."""
    targets = p.node_set() if isinstance(p, BoundedPathSet) else frozenset(p)
    return frozenset(u[0] for u in a.paths if u[-1] in targets)


@dataclass(frozen=True)
class PathModel(Model):
    nodes: int
    bound: int = 3

    kind = "path"
    has_omega = True
    exemptions = AUX_EXEMPTIONS

    def __post_init__(self):
        if self.nodes < 1 or self.bound < 1:
            raise ValueError("need at least one node and bound >= 1")

    @functools.cached_property
    def universe(self) -> tuple:
        paths = []
        for k in range(1, self.bound + 1):
            paths.extend(itertools.product(range(self.nodes), repeat=k))
        return tuple(paths)

    def paths(self, paths) -> BoundedPathSet:
        return BoundedPathSet.of(self.nodes, self.bound, paths)

    def node_test(self, nodes: Iterable[int]) -> BoundedPathSet:
        return self.paths((v,) for v in nodes)

    @property
    def zero(self):
        return BoundedPathSet(self.nodes, self.bound, frozenset())

    @property
    def one(self):
        return BoundedPathSet(self.nodes, self.bound, frozenset((v,) for v in range(self.nodes)))

    @property
    def top(self):
        return BoundedPathSet(self.nodes, self.bound, frozenset(self.universe))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return fusion(a, b)

    def leq(self, a, b):
        return a <= b

    def star(self, a):
        return _closure(self.one, a, fusion, BoundedPathSet.__add__)

    def omega(self, a):
        y = self.top
        while True:
            nxt = fusion(a, y)
            if nxt == y:
                return y
            y = nxt

    test_zero = zero
    test_one = one

    def test_add(self, p, q):
        return p + q

    def test_mul(self, p, q):
        return fusion(p, q)

    def test_not(self, p):
        return BoundedPathSet(self.nodes, self.bound, self.one.paths - p.paths)

    def test_leq(self, p, q):
        return p <= q

    def embed(self, p):
        return p

    def atoms(self):
        return [self.node_test([v]) for v in range(self.nodes)]

    def fdia(self, a, p):
        return self.node_test(path_fdia(a, p))

    def bdia(self, a, p):
        sources = p.node_set()
        return self.node_test(u[-1] for u in a.paths if u[0] in sources)

    def num_elements(self):
        return 1 << len(self.universe)

    def element_at(self, index):
        u = self.universe
        return BoundedPathSet(self.nodes, self.bound, frozenset(u[k] for k in range(len(u)) if index >> k & 1))

    def elements(self):
        return (self.element_at(k) for k in range(self.num_elements()))

    def random_element(self, rng, density=0.5):
        keep = rng.random(len(self.universe)) < density
        return BoundedPathSet(self.nodes, self.bound, frozenset(p for p, k in zip(self.universe, keep) if k))

    def encode(self, value):
        return [list(p) for p in sorted(value.paths, key=lambda p: (len(p), p))]

    def encode_test(self, p):
        return sorted(p.node_set())

    def decode(self, data):
        return self.paths(data)

    def decode_test(self, data):
        return self.node_test(data)

    def describe(self):
        return {"kind": "path", "nodes": self.nodes, "bound": self.bound}


@functools.lru_cache(maxsize=None)
def path_model(nodes: int, bound: int = 3) -> PathModel:
    return PathModel(nodes, bound)
