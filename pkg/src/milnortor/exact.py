"""Exact arithmetic and exact linear algebra.

Everything downstream (twisted Betti numbers, cover homology, torsion
detection) reduces to ranks of matrices over cyclotomic fields Q(zeta_N),
over finite fields F_{p^e} containing an order-N root of unity, and to
Smith normal forms of integer matrices.  No floating point anywhere.

Field elements are coefficient tuples modulo a fixed monic polynomial:

* characteristic 0: Q[t]/Phi_N(t), coefficients `fractions.Fraction`;
* characteristic p: F_p[t]/(f) with f the deterministically chosen
  irreducible of degree e = ord_N(p), coefficients ints in [0, p).

Tuples are immutable and hashable, so contexts can cache power tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import _modp


# ----------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low degree first)
# ----------------------------------------------------------------------

def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def poly_divmod_exact(num, den):
    """Divide integer polynomials, assuming the division is exact.

    `den` must be monic up to sign of its leading coefficient being +-1.
    """
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    assert lead in (1, -1)
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        c //= lead
        q[i - dd] = c
        for j, dj in enumerate(den):
            num[i - dd + j] -= c * dj
    assert all(c == 0 for c in num), "inexact polynomial division"
    return q


def euler_phi(k):
    """Euler totient.

    >>> [euler_phi(k) for k in (1, 3, 12)]
    [1, 2, 4]
    """
    if k < 1:
        raise ValueError("euler_phi needs k >= 1")
    result = k
    n = k
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(k):
    """Coefficients of Phi_k, low degree first.

    Computed by exact division: Phi_k = (t^k - 1) / prod_{d|k, d<k} Phi_d.

    >>> cyclotomic_poly(1), cyclotomic_poly(3), cyclotomic_poly(6)
    ((-1, 1), (1, 1, 1), (1, -1, 1))
    """
    if k < 1:
        raise ValueError("cyclotomic_poly needs k >= 1")
    num = [0] * (k + 1)
    num[0], num[k] = -1, 1
    for d in range(1, k):
        if k % d == 0:
            num = poly_divmod_exact(num, list(cyclotomic_poly(d)))
    assert len(num) == euler_phi(k) + 1
    return tuple(num)


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a, n):
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} not a unit mod {n}")
    order = 1
    x = a % n
    while x != 1:
        x = x * a % n
        order += 1
    return order


# ----------------------------------------------------------------------
# F_p polynomial helpers for modulus selection
# ----------------------------------------------------------------------

def _fp_polymulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_polyrem(out, mod, p)


def _fp_polyrem(a, mod, p):
    a = [c % p for c in a]
    d = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            c = c * inv_lead % p
            for j, mj in enumerate(mod):
                a[i - d + j] = (a[i - d + j] - c * mj) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _fp_polygcd(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    while any(b):
        a, b = b, _fp_polyrem(a, b, p)
        while len(b) > 1 and b[-1] == 0:
            b.pop()
    return a


def _fp_powmod_t(exp, mod, p):
    """t^exp modulo (mod) over F_p."""
    result = [1]
    base = _fp_polyrem([0, 1], mod, p)
    while exp:
        if exp & 1:
            result = _fp_polymulmod(result, base, mod, p)
        base = _fp_polymulmod(base, base, mod, p)
        exp >>= 1
    return result


def _sub_t(poly, p):
    """poly - t over F_p, stripped."""
    out = list(poly) + [0] * max(0, 2 - len(poly))
    out[1] = (out[1] - 1) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _fp_is_irreducible(f, p):
    e = len(f) - 1
    # t^(p^e) == t mod f, and gcd(t^(p^(e/q)) - t, f) = 1 for primes q | e.
    if _sub_t(_fp_powmod_t(p ** e, f, p), p) != [0]:
        return False
    for q in prime_factors(e):
        g = _fp_polygcd(f, _sub_t(_fp_powmod_t(p ** (e // q), f, p), p), p)
        if len(g) > 1:
            return False
    return True


def _smallest_irreducible(p, e):
    """Monic irreducible of degree e over F_p, smallest coefficient tuple
    (c_0, ..., c_{e-1}) in lexicographic order."""
    if e == 1:
        # t + c irreducible for any c; smallest is t.
        return [0, 1]
    # enumerate the middle coefficients c_1..c_{e-1} as base-p digits of a
    # counter (low digit fastest) so small candidates come first, and keep
    # the constant term nonzero; about e candidates are tried on average
    for high in range(p ** (e - 1)):
        digits = []
        m = high
        for _ in range(e - 1):
            digits.append(m % p)
            m //= p
        for c0 in range(1, p):
            f = [c0] + digits + [1]
            if _fp_is_irreducible(f, p):
                return f
    raise AssertionError("no irreducible found (impossible)")


# ----------------------------------------------------------------------
# field contexts
# ----------------------------------------------------------------------

class FieldCtx:
    """Arithmetic context: Q[t]/Phi_N or F_p[t]/(f) with a distinguished
    root of unity of exact multiplicative order N."""

    def __init__(self, char, N):
        if N < 1:
            raise ValueError("root order must be positive")
        self.char = char
        self.N = N
        if char == 0:
            self.modulus = cyclotomic_poly(N)
            self.degree = len(self.modulus) - 1
        else:
            p = char
            if p < 2 or prime_factors(p) != [p]:
                raise ValueError(f"characteristic {p} is not prime")
            if gcd(p, N) != 1:
                raise ValueError(f"characteristic {p} divides root order {N}")
            self.degree = multiplicative_order(p, N)
            self.modulus = tuple(_smallest_irreducible(p, self.degree))
        d = self.degree
        self.zero = self._tup([0] * d)
        self.one = self._tup([1] + [0] * (d - 1))
        self._tpowers = self._power_table()
        self.zeta = self._find_zeta()
        self._zeta_powers = [self.one]
        for _ in range(N - 1):
            self._zeta_powers.append(self.mul(self._zeta_powers[-1], self.zeta))
        assert self.mul(self._zeta_powers[-1], self.zeta) == self.one
        for q in prime_factors(N):
            assert self._zeta_powers[N // q] != self.one, "root order not exact"

    # -- representation helpers ----------------------------------------

    def _tup(self, coeffs):
        if self.char == 0:
            return tuple(Fraction(c) for c in coeffs)
        return tuple(int(c) % self.char for c in coeffs)

    def _power_table(self):
        """t^k reduced mod the modulus, for k up to 2*degree - 2."""
        d = self.degree
        table = []
        for k in range(2 * d - 1):
            if k < d:
                row = [0] * d
                row[k] = 1
                table.append(self._tup(row))
            else:
                # t * table[k-1], reduced
                prev = table[k - 1]
                row = [0] + list(prev[: d - 1])
                lead = prev[d - 1]
                if lead:
                    if self.char == 0:
                        row = [Fraction(r) - lead * m
                               for r, m in zip(row, self.modulus[:d])]
                    else:
                        row = [(r - lead * m) % self.char
                               for r, m in zip(row, self.modulus[:d])]
                table.append(self._tup(row))
        return table

    def _find_zeta(self):
        if self.char == 0:
            if self.degree == 1:
                # Phi_N linear only for N in {1, 2}: zeta = 1 or -1.
                return self.one if self.N == 1 else self._tup([-1])
            return self._tpowers[1]
        # F_{p^e}: take h^((p^e - 1)/N) for successive h until exact order N.
        p, e, N = self.char, self.degree, self.N
        group = p ** e - 1
        assert group % N == 0
        h = [0, 1] if e > 1 else [1]
        while True:
            z = self.pow(self._tup(h + [0] * (self.degree - len(h))), group // N)
            if z != self.zero and all(
                    self.pow(z, N // q) != self.one for q in prime_factors(N)):
                assert self.pow(z, N) == self.one
                return z
            # advance h deterministically: increment constant term, then grow
            h = list(h)
            h[0] += 1
            if h[0] >= p:
                h[0] = 0
                h.append(1)

    # -- ring operations ------------------------------------------------

    def add(self, a, b):
        if self.char == 0:
            return tuple(x + y for x, y in zip(a, b))
        p = self.char
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.char == 0:
            return tuple(x - y for x, y in zip(a, b))
        p = self.char
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.char == 0:
            return tuple(-x for x in a)
        p = self.char
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        d = self.degree
        acc = [0] * d
        powers = self._tpowers
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                row = powers[i + j]
                for k in range(d):
                    if row[k]:
                        acc[k] += c * row[k]
        return self._tup(acc)

    def pow(self, a, n):
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        """Multiplicative inverse.

        Characteristic p: Fermat, a^(p^e - 2).  Characteristic 0: solve the
        d x d rational system (multiplication-by-a block) * x = e_1.
        """
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.char != 0:
            return self.pow(a, self.char ** self.degree - 2)
        d = self.degree
        # augmented [block | e1] Gauss elimination over Q
        blk = self.companion_block(a)
        aug = [[Fraction(blk[i][j]) for j in range(d)] + [Fraction(1 if i == 0 else 0)]
               for i in range(d)]
        for col in range(d):
            piv = next(i for i in range(col, d) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for i in range(d):
                if i != col and aug[i][col] != 0:
                    c = aug[i][col]
                    aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
        return tuple(aug[i][d] for i in range(d))

    def zeta_pow(self, k):
        return self._zeta_powers[k % self.N]

    def from_int(self, n):
        if self.char == 0:
            return self._tup([n] + [0] * (self.degree - 1))
        return self._tup([n % self.char] + [0] * (self.degree - 1))

    def from_fraction(self, q):
        if self.char == 0:
            return tuple([Fraction(q)] + [Fraction(0)] * (self.degree - 1))
        num, den = q.numerator, q.denominator
        return self.mul(self.from_int(num), self.inv(self.from_int(den)))

    def is_zero(self, a):
        return all(c == 0 for c in a)

    # -- block expansion for fast ranks ----------------------------------

    def companion_block(self, a):
        """degree x degree matrix of multiplication by `a` over the prime
        field (column k = coefficients of a * t^k)."""
        d = self.degree
        cols = []
        cur = a
        cols.append(list(cur))
        for _ in range(d - 1):
            cur = self.mul(cur, self._tpowers[1]) if d > 1 else self.mul(cur, self.one)
            cols.append(list(cur))
        return [[cols[k][i] for k in range(d)] for i in range(d)]

    def __repr__(self):
        if self.char == 0:
            return f"FieldCtx(Q(zeta_{self.N}), degree {self.degree})"
        return f"FieldCtx(F_{self.char}^{self.degree}, zeta order {self.N})"


@lru_cache(maxsize=None)
def field_context(char, N):
    """Deterministic field context with a root of unity of exact order N."""
    return FieldCtx(char, N)


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FieldMatrix:
    ctx: FieldCtx
    rows: tuple  # tuple of tuples of ctx elements

    @classmethod
    def build(cls, ctx, rows):
        rows = tuple(tuple(r) for r in rows)
        for r in rows:
            assert len(r) == len(rows[0]), "ragged matrix"
        return cls(ctx, rows)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)


def matrix_rank(M: FieldMatrix) -> int:
    """Exact rank over the matrix's field context."""
    ctx, rows = M.ctx, [list(r) for r in M.rows]
    if not rows or not rows[0]:
        return 0
    if ctx.char != 0:
        return _rank_charp(ctx, rows)
    return _rank_char0(ctx, rows)


def _rank_charp(ctx, rows):
    """Rank over F_{p^e} via the e x e multiplication-block expansion over
    F_p, eliminated by the mod-p kernel (numba or numpy, env-selected)."""
    import numpy as np

    d = ctx.degree
    m, n = len(rows), len(rows[0])
    big = np.zeros((m * d, n * d), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if any(entry):
                blk = ctx.companion_block(entry)
                for a in range(d):
                    for b in range(d):
                        big[i * d + a, j * d + b] = blk[a][b]
    r = _modp.rank_mod_p(big, ctx.char)
    assert r % d == 0
    return r // d


def _rank_char0(ctx, rows):
    """Fraction-free elimination in Z[zeta_N] with per-row content stripping.

    Rows are first scaled to integer coefficient vectors (rank-neutral).
    """
    d = ctx.degree
    work = []
    for row in rows:
        ints = []
        lcm = 1
        for entry in row:
            for c in entry:
                lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        for entry in row:
            ints.append(tuple(int(c * lcm) for c in entry))
        if any(any(e) for e in ints):
            work.append(_strip_content(ints))
    rank = 0
    ncols = len(rows[0])
    pivoted_cols = set()
    while work:
        # pivot: smallest (max |coeff|, nonzero count) entry available
        best = None
        for ri, row in enumerate(work):
            for ci in range(ncols):
                if ci in pivoted_cols:
                    continue
                e = row[ci]
                if any(e):
                    size = (max(abs(c) for c in e), sum(1 for c in e if c))
                    if best is None or size < best[0]:
                        best = (size, ri, ci)
        if best is None:
            break
        _, ri, ci = best
        pivot_row = work.pop(ri)
        piv = pivot_row[ci]
        rank += 1
        pivoted_cols.add(ci)
        new_work = []
        for row in work:
            a = row[ci]
            if any(a):
                row = [_zeta_submul(ctx, piv, row[k], a, pivot_row[k], d)
                       for k in range(ncols)]
                if not any(any(e) for e in row):
                    continue
                row = _strip_content(row)
            new_work.append(row)
        work = new_work
    return rank


def _strip_content(row):
    g = 0
    for e in row:
        for c in e:
            g = gcd(g, c)
    if g > 1:
        return [tuple(c // g for c in e) for e in row]
    return row


def _zeta_mul_int(ctx, a, b, d):
    """Multiply two integer coefficient vectors modulo the cyclotomic
    modulus, staying in integers."""
    acc = [0] * d
    powers = ctx._tpowers
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            c = ai * bj
            row = powers[i + j]
            for k in range(d):
                rk = row[k]
                if rk:
                    acc[k] += c * int(rk)
    return acc


def _zeta_submul(ctx, piv, x, a, y, d):
    """piv*x - a*y over Z[zeta]."""
    px = _zeta_mul_int(ctx, piv, x, d) if any(x) else [0] * d
    ay = _zeta_mul_int(ctx, a, y, d) if any(y) else [0] * d
    return tuple(p - q for p, q in zip(px, ay))


_SPECIALIZATION_POINTS = {}


def specialization_point(N):
    """A prime q = 1 (mod N) near 10^9 together with an element of F_q of
    exact multiplicative order N.  Evaluating t at that element is a ring
    map Z[t]/Phi_N -> F_q, so ranks can only drop under it."""
    cached = _SPECIALIZATION_POINTS.get(N)
    if cached is not None:
        return cached
    from sympy import isprime

    base = 10 ** 9
    q = base - base % N + 1
    while q <= N or not isprime(q):
        q += N
    facs = prime_factors(N) if N > 1 else ()
    g = 2
    while True:
        w = pow(g, (q - 1) // N, q)
        if w != 1 or N == 1:
            if all(pow(w, N // p, q) != 1 for p in facs):
                break
        g += 1
    _SPECIALIZATION_POINTS[N] = (q, w)
    return q, w


def rank_lower_bound(M: FieldMatrix) -> int:
    """Certified lower bound on the rank of a characteristic-zero matrix:
    specialize the root of unity into a large prime field and eliminate
    there.  Any nonvanishing minor downstairs lifts, so the true rank is
    at least the returned value (and usually equal)."""
    import numpy as np

    from . import _modp

    ctx = M.ctx
    if ctx.char != 0:
        raise ValueError("lower bound shortcut is for characteristic zero")
    if not M.rows or not M.rows[0]:
        return 0
    q, w = specialization_point(ctx.N)
    wpow = [1]
    for _ in range(ctx.degree - 1):
        wpow.append(wpow[-1] * w % q)
    out = np.zeros((len(M.rows), len(M.rows[0])), dtype=np.int64)
    for i, row in enumerate(M.rows):
        for j, entry in enumerate(row):
            acc = 0
            for c, wp in zip(entry, wpow):
                if c:
                    v = c.numerator % q
                    if c.denominator != 1:
                        v = v * pow(c.denominator % q, q - 2, q) % q
                    acc = (acc + v * wp) % q
            out[i, j] = acc
    return int(_modp.rank_mod_p(out, q))


def matrix_rank_generic(M: FieldMatrix) -> int:
    """Straightforward Gauss elimination using ctx.inv (oracle for tests)."""
    ctx = M.ctx
    rows = [list(r) for r in M.rows]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows))
                    if not ctx.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not ctx.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [ctx.sub(x, ctx.mul(c, y))
                           for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def int_matrix_rank(rows) -> int:
    """Exact rank of an integer matrix (fraction-free, content-stripped)."""
    work = [[int(c) for c in r] for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(rows[0])
    rank = 0
    pivoted = set()
    while work:
        best = None
        for ri, row in enumerate(work):
            for ci in range(ncols):
                if ci not in pivoted and row[ci]:
                    size = abs(row[ci])
                    if best is None or size < best[0]:
                        best = (size, ri, ci)
        if best is None:
            break
        _, ri, ci = best
        prow = work.pop(ri)
        piv = prow[ci]
        rank += 1
        pivoted.add(ci)
        nxt = []
        for row in work:
            a = row[ci]
            if a:
                row = [piv * x - a * y for x, y in zip(row, prow)]
                if not any(row):
                    continue
                g = 0
                for c in row:
                    g = gcd(g, c)
                if g > 1:
                    row = [c // g for c in row]
            nxt.append(row)
        work = nxt
    return rank


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

@dataclass
class SnfResult:
    invariant_factors: tuple  # d_1 | d_2 | ... | d_s, all positive
    rank: int
    shape: tuple
    V: list | None = None  # column transform, M @ V has the diagonal form

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            assert b % a == 0


def smith_normal_form(rows, want_V=False) -> SnfResult:
    """Smith normal form by minimal-absolute-value pivoting.

    Returns the invariant factors d_1 | ... | d_s (s = rank). When `want_V`
    the unimodular column transform V is tracked (used to solve x*M = t).
    """
    M = [[int(c) for c in r] for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_V else None
    diag = []
    top = 0
    left = 0
    while top < m and left < n:
        # find minimal |entry| in the remaining block
        piv = None
        for i in range(top, m):
            row = M[i]
            for j in range(left, n):
                v = row[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv and piv[0] == 1:
                break
        if piv is None:
            break
        _, pi, pj = piv
        M[top], M[pi] = M[pi], M[top]
        if pj != left:
            for row in M:
                row[left], row[pj] = row[pj], row[left]
            if want_V:
                for row in V:
                    row[left], row[pj] = row[pj], row[left]
        while True:
            # clear the column
            again = False
            for i in range(top + 1, m):
                if M[i][left]:
                    q = M[i][left] // M[top][left]
                    if q:
                        Mi, Mt = M[i], M[top]
                        for j in range(left, n):
                            Mi[j] -= q * Mt[j]
                    if M[i][left]:
                        M[top], M[i] = M[i], M[top]
                        again = True
            if again:
                continue
            # clear the row
            again = False
            for j in range(left + 1, n):
                if M[top][j]:
                    q = M[top][j] // M[top][left]
                    if q:
                        for row in M:
                            row[j] -= q * row[left]
                        if want_V:
                            for row in V:
                                row[j] -= q * row[left]
                    if M[top][j]:
                        # swap columns and retry
                        for row in M:
                            row[left], row[j] = row[j], row[left]
                        if want_V:
                            for row in V:
                                row[left], row[j] = row[j], row[left]
                        again = True
            if not again:
                break
        d = M[top][left]
        if d < 0:
            for row in M:
                row[left] = -row[left]
            if want_V:
                for row in V:
                    row[left] = -row[left]
            d = -d
        diag.append(d)
        top += 1
        left += 1
    # enforce divisibility d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                lcm = a * b // g
                # gcd/lcm swap is realizable by unimodular ops; V is only
                # used for solvability mod r, which depends on the diagonal
                # through gcds, so the tracked V remains valid for that use
                # only when no swap was needed.  Invalidate V otherwise.
                diag[i], diag[i + 1] = g, lcm
                changed = True
                if want_V:
                    V = None
                    want_V = False
    return SnfResult(tuple(diag), len(diag), (m, n), V)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group as (rank, invariant factors > 1)."""
    rank: int
    torsion: tuple = ()

    @classmethod
    def from_relations(cls, rows, ngens):
        """Cokernel of the relation matrix (rows = relations, cols = gens)."""
        if not rows:
            return cls(ngens, ())
        snf = smith_normal_form(rows)
        tors = tuple(d for d in snf.invariant_factors if d > 1)
        return cls(ngens - snf.rank, tors)

    def p_torsion_rank(self, p):
        return sum(1 for d in self.torsion if d % p == 0)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" + (f"^{self.rank}" if self.rank > 1 else ""))
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"
