"""Both implementations of the F_p rank kernel agree."""

import random
import subprocess
import sys

import numpy as np
import pytest

from milnortor import _modp


def _dense_rank_oracle(rows, p):
    """Fraction-free elimination over F_p in plain Python."""
    a = [[x % p for x in row] for row in rows]
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


@pytest.mark.parametrize("p", [2, 3, 5, 1000000007])
def test_paths_agree_with_oracle(p):
    rng = random.Random(p)
    for _ in range(25):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        expect = _dense_rank_oracle(rows, p)
        a = np.array(rows, dtype=np.int64)
        assert _modp._rank_mod_p_numpy(a, p) == expect
        if _modp.USING_NUMBA:
            assert _modp.rank_mod_p(a, p) == expect


def test_rank_empty_matrix():
    assert _modp.rank_mod_p(np.zeros((0, 3), dtype=np.int64), 5) == 0


def test_env_flag_forces_numpy_path():
    code = ("import milnortor._modp as m; "
            "assert not m.USING_NUMBA; "
            "import numpy as np; "
            "assert m.rank_mod_p(np.array([[2, 4], [1, 2]]), 3) == 1")
    subprocess.run([sys.executable, "-c", code], check=True,
                   env={"MILNORTOR_NO_NUMBA": "1", "PATH": "/usr/bin:/bin"})
