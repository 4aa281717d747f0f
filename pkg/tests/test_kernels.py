import os
import subprocess
import sys

import numpy as np
import pytest

from katd import kernels
from katd.rel import FiniteRelation, StateSet, all_relations_array, compose, random_relations_array, star
from katd.termination import divergence

needs_numba = pytest.mark.skipif(kernels.NUMBA is None, reason="numba not installed")


def _batch(n, count, seed):
    return random_relations_array(n, count, np.random.default_rng(seed), density=0.3)


@needs_numba
@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_backends_agree(n):
    a, b = _batch(n, 400, n), _batch(n, 400, n + 100)
    p = np.random.default_rng(n).integers(0, 1 << n, size=400, dtype=np.uint64)
    np_, nb = kernels.NUMPY, kernels.NUMBA
    assert np.array_equal(np_.compose(a, b), nb.compose(a, b))
    assert np.array_equal(np_.star(a), nb.star(a))
    assert np.array_equal(np_.fdia(a, p), nb.fdia(a, p))
    assert np.array_equal(np_.bdia(a, p), nb.bdia(a, p))
    assert np.array_equal(np_.divergence(a), nb.divergence(a))


def test_kernels_match_scalar_relations():
    arr = all_relations_array(2)
    rels = [FiniteRelation(2, tuple(int(v) for v in row)) for row in arr]
    stars = kernels.star(arr)
    comps = kernels.compose(arr, arr[::-1].copy())
    divs = kernels.divergence(arr)
    for k, r in enumerate(rels):
        assert FiniteRelation(2, tuple(int(v) for v in stars[k])) == star(r)
        assert FiniteRelation(2, tuple(int(v) for v in comps[k])) == compose(r, rels[15 - k])
        assert StateSet(2, int(divs[k])) == divergence(r)


def test_shape_checks():
    with pytest.raises(ValueError):
        kernels.compose(np.zeros((2, 3), np.uint64), np.zeros((3, 3), np.uint64))
    with pytest.raises(ValueError):
        kernels.fdia(np.zeros((2, 3), np.uint64), np.zeros(5, np.uint64))
    with pytest.raises(ValueError):
        kernels.star(np.zeros((1, 65), np.uint64))


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, KATD_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from katd import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


@needs_numba
def test_default_backend_is_numba():
    env = {k: v for k, v in os.environ.items() if k != "KATD_DISABLE_NUMBA"}
    out = subprocess.run(
        [sys.executable, "-c", "from katd import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numba"
