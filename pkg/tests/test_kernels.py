import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cqm import kernels


@st.composite
def masks(draw, n_max=10, t_max=8):
    n = draw(st.integers(1, n_max))
    tests = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=t_max))
    return np.array(tests, dtype=np.int64), n


def brute_transversals(tests, n):
    return [u for u in range(1 << n) if all(bin(u & int(t)).count("1") == 1 for t in tests)]


@given(masks())
def test_transversal_paths_agree_with_brute_force(case):
    tests, n = case
    want = brute_transversals(tests, n)
    got_numba = [int(x) for x in kernels.exact_transversals_numba(tests, n)]
    got_numpy = [int(x) for x in kernels.exact_transversals_numpy(tests, n)]
    # the kernels never add elements outside every test
    cover = int(np.bitwise_or.reduce(tests))
    want = sorted({u & cover for u in want})
    assert got_numba == got_numpy == want


@given(st.lists(st.integers(0, (1 << 20) - 1), min_size=1, max_size=12),
       st.lists(st.integers(0, (1 << 12) - 1), max_size=40))
def test_image_paths_agree(rows, subsets):
    rows = np.array(rows, dtype=np.int64)
    subsets = np.array(subsets, dtype=np.int64) & ((1 << len(rows)) - 1)
    a = kernels.images_numba(rows, subsets)
    b = kernels.images_numpy(rows, subsets)
    want = [int(np.bitwise_or.reduce(rows[[i for i in range(len(rows)) if (int(m) >> i) & 1]]))
            if int(m) else 0 for m in subsets]
    assert list(a) == list(b) == want


def test_colinearity_paths_agree():
    rng = np.random.default_rng(0)
    u = rng.normal(size=(7, 5)) + 1j * rng.normal(size=(7, 5))
    v = rng.normal(size=(4, 5)) + 1j * rng.normal(size=(4, 5))
    assert np.allclose(kernels.colinearity_numba(u, v), kernels.colinearity_numpy(u, v))


def test_bit_limit():
    with pytest.raises(ValueError):
        kernels.exact_transversals(np.ones(63, dtype=np.int64), 3)


def test_disable_flag_selects_numpy():
    code = ("from cqm import kernels, testspace, finrel;"
            "print(kernels.USE_NUMBA);"
            "print(sorted(map(sorted, testspace.complement("
            "finrel.FinSet(range(4)), [[0, 1], [2, 3]]))))")
    env = dict(os.environ, CQM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split("\n")
    assert out[0] == "False"
    assert out[1] == "[[0, 2], [0, 3], [1, 2], [1, 3]]"
