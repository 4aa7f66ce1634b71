"""Central hyperplane arrangements with exact rank-2 intersection data.

Normals are primitive integer vectors by default; arrangements whose
realization needs roots of unity (the monomial family) store normals as
vectors over a characteristic-0 cyclotomic field context instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .exact import FieldMatrix, int_matrix_rank, matrix_rank


def _primitive_int_vector(vec):
    fracs = [Fraction(x) for x in vec]
    if all(x == 0 for x in fracs):
        raise ValueError("zero normal vector")
    den = 1
    for x in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _monic_ctx_vector(ctx, vec):
    if all(ctx.is_zero(x) for x in vec):
        raise ValueError("zero normal vector")
    lead = next(x for x in vec if not ctx.is_zero(x))
    inv = ctx.inv(lead)
    return tuple(ctx.mul(inv, x) for x in vec)


@dataclass(frozen=True)
class Flat2:
    """A maximal rank-2 flat: the hyperplanes through a codimension-2
    subspace, together with a basis of that subspace."""
    hyperplanes: tuple
    basis: tuple

    @property
    def multiplicity(self):
        return len(self.hyperplanes)


@dataclass(frozen=True)
class Arrangement:
    dim: int
    normals: tuple
    labels: tuple | None = None
    ctx: object = None  # None: primitive integer normals; else a FieldCtx

    # -- construction --------------------------------------------------

    @classmethod
    def validate(cls, hyperplanes, labels=None, ctx=None, dim=None):
        """Normalize and check a raw list of normal vectors.

        Rejects empty input, zero vectors and proportional pairs.
        """
        hyperplanes = list(hyperplanes)
        if not hyperplanes:
            raise ValueError("empty arrangement")
        if dim is None:
            dim = len(hyperplanes[0])
        normals = []
        for vec in hyperplanes:
            if len(vec) != dim:
                raise ValueError("inconsistent ambient dimension")
            if ctx is None:
                normals.append(_primitive_int_vector(vec))
            else:
                normals.append(_monic_ctx_vector(ctx, vec))
        if len(set(normals)) != len(normals):
            raise ValueError("proportional (or repeated) normals")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(normals):
                raise ValueError("label count mismatch")
        return cls(dim, tuple(normals), labels, ctx)

    @property
    def n(self):
        return len(self.normals)

    def label(self, i):
        return self.labels[i] if self.labels else f"H{i}"

    # -- exact linear algebra on normals --------------------------------

    def _rows_rank(self, rows):
        if not rows:
            return 0
        if self.ctx is None:
            return int_matrix_rank([list(r) for r in rows])
        return matrix_rank(FieldMatrix.build(self.ctx, [list(r) for r in rows]))

    def rank(self):
        return self._rows_rank(self.normals)

    def _nullspace_of(self, indices):
        """Basis of the common kernel of the indexed normals (codim-2 flat)."""
        if self.ctx is None:
            rows = [[Fraction(x) for x in self.normals[i]] for i in indices]
            one, zero = Fraction(1), Fraction(0)
            add = lambda a, b: a + b
            mul = lambda a, b: a * b
            neg = lambda a: -a
            inv = lambda a: 1 / a
            is_zero = lambda a: a == 0
        else:
            ctx = self.ctx
            rows = [list(self.normals[i]) for i in indices]
            one, zero = ctx.one, ctx.zero
            add, mul, neg, inv, is_zero = ctx.add, ctx.mul, ctx.neg, ctx.inv, ctx.is_zero
        m, ncols = len(rows), self.dim
        pivots = []
        r = 0
        for c in range(ncols):
            p = next((i for i in range(r, m) if not is_zero(rows[i][c])), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            s = inv(rows[r][c])
            rows[r] = [mul(s, x) for x in rows[r]]
            for i in range(m):
                if i != r and not is_zero(rows[i][c]):
                    f = rows[i][c]
                    rows[i] = [add(x, neg(mul(f, y))) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for c in free:
            vec = [zero] * ncols
            vec[c] = one
            for ri, pc in enumerate(pivots):
                vec[pc] = neg(rows[ri][c])
            if self.ctx is None:
                basis.append(_primitive_int_vector(vec))
            else:
                basis.append(tuple(vec))
        return tuple(basis)

    # -- intersection data ----------------------------------------------

    def rank2_flats(self):
        """All maximal rank-2 flats, sorted by their hyperplane index sets.

        Every unordered pair of hyperplanes lies in exactly one flat.
        """
        n = self.n
        seen = {}
        for i in range(n):
            for j in range(i + 1, n):
                members = [k for k in range(n)
                           if self._rows_rank([self.normals[i],
                                               self.normals[j],
                                               self.normals[k]]) == 2]
                key = tuple(members)
                if key not in seen:
                    seen[key] = Flat2(key, self._nullspace_of(key))
        flats = sorted(seen.values(), key=lambda f: f.hyperplanes)
        assert sum(comb(f.multiplicity, 2) for f in flats) == comb(n, 2)
        return flats

    def delete(self, i):
        if not 0 <= i < self.n:
            raise IndexError("hyperplane index out of range")
        normals = self.normals[:i] + self.normals[i + 1:]
        labels = None
        if self.labels:
            labels = self.labels[:i] + self.labels[i + 1:]
        return Arrangement(self.dim, normals, labels, self.ctx)

    def os_poincare_rank3(self):
        """Poincare polynomial of the projectivized complement U, as a
        coefficient list: 1 + (n-1)x + b2 x^2 with b2 from Whitney sums
        over the rank-2 flats."""
        rk = self.rank()
        if rk > 3:
            raise ValueError("rank > 3 not supported")
        if rk <= 1:
            return [1]
        b1 = self.n - 1
        b2 = sum(f.multiplicity - 1 for f in self.rank2_flats()) - b1
        assert b2 >= 0
        return [1, b1] if b2 == 0 else [1, b1, b2]


@dataclass(frozen=True)
class Multiarrangement:
    arrangement: Arrangement
    m: tuple

    @classmethod
    def build(cls, arrangement, m):
        m = tuple(int(x) for x in m)
        if len(m) != arrangement.n:
            raise ValueError("one multiplicity per hyperplane required")
        if any(x < 1 for x in m):
            raise ValueError("multiplicities must be positive")
        return cls(arrangement, m)

    @property
    def N(self):
        return sum(self.m)


# ----------------------------------------------------------------------
# serialization ("p/q" rational strings; ctx vectors as coefficient lists)
# ----------------------------------------------------------------------

def _frac_str(x):
    return str(Fraction(x))


def arrangement_to_dict(arr):
    if arr.ctx is None:
        hyps = [[_frac_str(x) for x in row] for row in arr.normals]
        out = {"dim": arr.dim, "hyperplanes": hyps}
    else:
        hyps = [[[_frac_str(c) for c in entry] for entry in row]
                for row in arr.normals]
        out = {"dim": arr.dim, "root_order": arr.ctx.N, "hyperplanes": hyps}
    if arr.labels:
        out["labels"] = list(arr.labels)
    return out


def arrangement_from_dict(data):
    from .exact import field_context
    labels = data.get("labels")
    if "root_order" in data:
        ctx = field_context(0, int(data["root_order"]))

        def elem(coeffs):
            coeffs = [Fraction(c) for c in coeffs]
            if len(coeffs) > ctx.degree:
                raise ValueError("coefficient list longer than field degree")
            return tuple(coeffs + [Fraction(0)] * (ctx.degree - len(coeffs)))

        hyps = [[elem(entry) for entry in row] for row in data["hyperplanes"]]
        return Arrangement.validate(hyps, labels=labels, ctx=ctx,
                                    dim=int(data["dim"]))
    hyps = [[Fraction(x) for x in row] for row in data["hyperplanes"]]
    return Arrangement.validate(hyps, labels=labels, dim=int(data["dim"]))
