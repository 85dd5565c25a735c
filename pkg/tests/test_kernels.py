import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from syzlab import _kernels as K
from oracles import rank_mod

P = 32003

mats = st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(0, 6))
)


@settings(max_examples=80, deadline=None)
@given(mats, st.sampled_from([2, 3, 7, P]))
def test_backends_agree(a, p):
    r1, p1 = K.rref_mod_p(a, p, use_numba=True)
    r0, p0 = K.rref_mod_p(a, p, use_numba=False)
    assert np.array_equal(p1, p0)
    assert np.array_equal(r1[: len(p1)], r0[: len(p0)])
    assert K.rank_mod_p(a, p, use_numba=True) == rank_mod(a, p)


@settings(max_examples=50, deadline=None)
@given(mats, st.sampled_from([3, P]))
def test_nullspace(a, p):
    for flag in (True, False):
        N = K.nullspace_mod_p(a, p, use_numba=flag)
        assert N.shape[0] == a.shape[1] - rank_mod(a, p)
        assert not ((a @ N.T) % p).any()


def test_empty_and_shape_checks():
    assert K.rank_mod_p(np.zeros((0, 3), dtype=np.int64), 5) == 0
    with pytest.raises(ValueError):
        K.rref_mod_p(np.zeros(3), 5)


@pytest.mark.parametrize("flag,expected", [("0", "False"), ("1", str(K.numba is not None))])
def test_env_flag(flag, expected):
    env = dict(os.environ, SYZLAB_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from syzlab import _kernels; print(_kernels.USE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected
