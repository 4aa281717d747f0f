"""Batched boolean-matrix kernels over row bitsets.

A batch of relations on ``n`` states is a ``uint64`` array of shape ``(m, n)``:
``A[i, x]`` has bit ``y`` set iff ``(x, y)`` is in relation ``i``.  A batch of
state sets is a ``uint64`` array of shape ``(m,)``.

Two interchangeable backends exist.  ``NUMPY`` vectorises over the batch axis;
``NUMBA`` runs explicit loops under ``@njit``.  The module-level functions are
bound to numba unless it is missing or ``KATD_DISABLE_NUMBA`` is set.
"""

from types import SimpleNamespace

import numpy as np

from ._jit import HAVE_NUMBA, USE_NUMBA

MAX_STATES = 64

_ONE = np.uint64(1)
_ZERO = np.uint64(0)


def full_mask(n):
    if not 1 <= n <= MAX_STATES:
        raise ValueError(f"state count must be in 1..{MAX_STATES}, got {n}")
    return np.uint64((1 << n) - 1)


def identity_rows(n):
    return np.left_shift(_ONE, np.arange(n, dtype=np.uint64))


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def _bits(rows, n):
    """Unpack ``(..., )`` bitsets into a trailing boolean axis of length n."""
    shifts = np.arange(n, dtype=np.uint64)
    return ((rows[..., None] >> shifts) & _ONE).astype(bool)


def _pack(mask):
    n = mask.shape[-1]
    weights = np.left_shift(_ONE, np.arange(n, dtype=np.uint64))
    return np.bitwise_or.reduce(np.where(mask, weights, _ZERO), axis=-1)


def compose_np(a, b):
    n = a.shape[1]
    sel = _bits(a, n)  # (m, x, z)
    return np.bitwise_or.reduce(np.where(sel, b[:, None, :], _ZERO), axis=2)


def star_np(a):
    n = a.shape[1]
    r = a | identity_rows(n)
    while True:
        nxt = compose_np(r, r)
        if np.array_equal(nxt, r):
            return r
        r = nxt


def fdia_np(a, p):
    return _pack((a & p[:, None]) != 0)


def bdia_np(a, p):
    n = a.shape[1]
    sel = _bits(p, n)
    return np.bitwise_or.reduce(np.where(sel, a, _ZERO), axis=1)


def divergence_np(a):
    m, n = a.shape
    d = np.full(m, full_mask(n), dtype=np.uint64)
    for _ in range(n + 1):
        nxt = fdia_np(a, d)
        if np.array_equal(nxt, d):
            break
        d = nxt
    return d


NUMPY = SimpleNamespace(
    name="numpy",
    compose=compose_np,
    star=star_np,
    fdia=fdia_np,
    bdia=bdia_np,
    divergence=divergence_np,
)


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def compose_nb(a, b):
        m, n = a.shape
        out = np.zeros((m, n), dtype=np.uint64)
        for i in range(m):
            for x in range(n):
                row = a[i, x]
                acc = np.uint64(0)
                for z in range(n):
                    if (row >> np.uint64(z)) & np.uint64(1):
                        acc |= b[i, z]
                out[i, x] = acc
        return out

    @njit(cache=True)
    def star_nb(a):
        m, n = a.shape
        out = a.copy()
        for i in range(m):
            # Warshall on bit rows
            for k in range(n):
                bk = np.uint64(1) << np.uint64(k)
                rk = out[i, k]
                for x in range(n):
                    if out[i, x] & bk:
                        out[i, x] |= rk
            for x in range(n):
                out[i, x] |= np.uint64(1) << np.uint64(x)
        return out

    @njit(cache=True)
    def fdia_nb(a, p):
        m, n = a.shape
        out = np.zeros(m, dtype=np.uint64)
        for i in range(m):
            pi = p[i]
            acc = np.uint64(0)
            for x in range(n):
                if a[i, x] & pi:
                    acc |= np.uint64(1) << np.uint64(x)
            out[i] = acc
        return out

    @njit(cache=True)
    def bdia_nb(a, p):
        m, n = a.shape
        out = np.zeros(m, dtype=np.uint64)
        for i in range(m):
            pi = p[i]
            acc = np.uint64(0)
            for x in range(n):
                if (pi >> np.uint64(x)) & np.uint64(1):
                    acc |= a[i, x]
            out[i] = acc
        return out

    @njit(cache=True)
    def divergence_nb(a):
        m, n = a.shape
        full = np.uint64(0xFFFFFFFFFFFFFFFF) >> np.uint64(64 - n)
        out = np.zeros(m, dtype=np.uint64)
        for i in range(m):
            d = full
            while True:
                nxt = np.uint64(0)
                for x in range(n):
                    if a[i, x] & d:
                        nxt |= np.uint64(1) << np.uint64(x)
                if nxt == d:
                    break
                d = nxt
            out[i] = d
        return out

    return SimpleNamespace(
        name="numba",
        compose=compose_nb,
        star=star_nb,
        fdia=fdia_nb,
        bdia=bdia_nb,
        divergence=divergence_nb,
    )


NUMBA = _build_numba() if HAVE_NUMBA else None

_active = NUMBA if (USE_NUMBA and NUMBA is not None) else NUMPY

BACKEND = _active.name


def _as_rows(a):
    a = np.ascontiguousarray(a, dtype=np.uint64)
    if a.ndim != 2:
        raise ValueError(f"expected an (m, n) row-bitset array, got shape {a.shape}")
    full_mask(a.shape[1])
    return a


def _as_sets(p, m):
    p = np.ascontiguousarray(p, dtype=np.uint64)
    if p.shape != (m,):
        raise ValueError(f"expected {m} state sets, got shape {p.shape}")
    return p


def compose(a, b):
    a, b = _as_rows(a), _as_rows(b)
    if a.shape != b.shape:
        raise ValueError(f"batch shape mismatch: {a.shape} vs {b.shape}")
    return _active.compose(a, b)


def star(a):
    return _active.star(_as_rows(a))


def plus(a):
    a = _as_rows(a)
    return _active.compose(a, _active.star(a))


def fdia(a, p):
    a = _as_rows(a)
    return _active.fdia(a, _as_sets(p, a.shape[0]))


def bdia(a, p):
    a = _as_rows(a)
    return _active.bdia(a, _as_sets(p, a.shape[0]))


def divergence(a):
    return _active.divergence(_as_rows(a))


def atom_leq(lhs, rhs, m, n):
    """Per-batch truth of ``lhs(q) <= rhs(q)`` for every atom ``q`` of n states.

    ``lhs`` and ``rhs`` take a ``(m,)`` batch of state sets and return one.
    Both sides must be additive for the atom check to be sound.
    """
    ok = np.ones(m, dtype=bool)
    for k in range(n):
        q = np.full(m, np.uint64(1) << np.uint64(k), dtype=np.uint64)
        ok &= (lhs(q) & ~rhs(q)) == 0
    return ok
