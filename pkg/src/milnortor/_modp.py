"""Hot kernel: matrix rank over F_p.

Finite-field ranks dominate the run time of character sweeps (every
twisted Betti number over F_{p^e} turns into one mod-p elimination after
block expansion), so the inner loop is compiled with numba when available.

Set MILNORTOR_NO_NUMBA=1 to force the pure-numpy fallback; both paths are
exercised by the test suite and compared in benchmarks/bench_modp_rank.py.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("MILNORTOR_NO_NUMBA", "") not in ("", "0")


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    """Row-reduce over F_p with vectorized row updates."""
    a = np.ascontiguousarray(a, dtype=np.int64) % p
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        rows = np.nonzero(a[r + 1:, c])[0] + r + 1
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        r += 1
    return r


def _build_numba_kernel():
    from numba import njit

    @njit(cache=True)
    def rank_kernel(a, p):  # pragma: no cover - compiled
        m, n = a.shape
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(n):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            # modular inverse by Fermat (p prime)
            inv = 1
            base = a[r, c] % p
            e = p - 2
            while e:
                if e & 1:
                    inv = inv * base % p
                base = base * base % p
                e >>= 1
            for j in range(c, n):
                a[r, j] = a[r, j] * inv % p
            for i in range(r + 1, m):
                f = a[i, c]
                if f != 0:
                    for j in range(c, n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r

    return rank_kernel


_numba_kernel = None
if not _FORCE_NUMPY:
    try:
        _numba_kernel = _build_numba_kernel()
    except ImportError:  # numba genuinely unavailable
        _numba_kernel = None

USING_NUMBA = _numba_kernel is not None


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p (p prime, p small enough that
    p**2 fits an int64)."""
    if a.size == 0:
        return 0
    if USING_NUMBA:
        work = np.ascontiguousarray(a, dtype=np.int64) % p
        return int(_numba_kernel(work, p))
    return _rank_mod_p_numpy(a, p)
