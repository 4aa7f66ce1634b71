"""Parallel connection of pointed arrangements, polarization of
multiarrangements, and the induced transport maps on degree-1 (co)homology.

The parallel connection E1 o_x E2 glues the basepoint hyperplane of E2
onto the hyperplane x of E1; coordinates list E1 first (including x, which
records the glued hyperplane once) and then E2 minus its basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, Multiarrangement
from .exact import smith_normal_form


@dataclass(frozen=True)
class PointedArrangement:
    arrangement: Arrangement
    basepoint: int

    @classmethod
    def build(cls, arrangement, basepoint):
        if not 0 <= basepoint < arrangement.n:
            raise ValueError("basepoint out of range")
        return cls(arrangement, basepoint)


def pencil_arrangement(m):
    """Pl_m: m concurrent lines through the origin of C^2, pointed at the
    first line."""
    if m < 1:
        raise ValueError("need m >= 1")
    if m == 1:
        # the operad unit: one hyperplane in one dimension
        return PointedArrangement.build(Arrangement.validate([(1,)]), 0)
    normals = [(1, k) for k in range(m - 1)] + [(0, 1)]
    return PointedArrangement.build(Arrangement.validate(normals), 0)


def parallel_connect(P1, x, P2) -> PointedArrangement:
    """E1 o_x E2 in dimension l1 + l2 - 1: normals of E1 extended by zeros;
    the basepoint hyperplane of E2 is identified with x, and the remaining
    normals of E2 are rewritten by eliminating one coordinate (the last one
    with nonzero coefficient in the glued form) against f_x(v) = g(w)."""
    A1, A2 = P1.arrangement, P2.arrangement
    if not 0 <= x < A1.n:
        raise ValueError("plug index out of range")
    if A2.ctx is not None:
        raise ValueError("second factor must have rational normals")
    l1, l2 = A1.dim, A2.dim
    ctx = A1.ctx

    def lift(q):
        return ctx.from_fraction(Fraction(q)) if ctx is not None else Fraction(q)

    zero, fx = lift(0), [c if ctx else Fraction(c) for c in A1.normals[x]]
    g = [Fraction(c) for c in A2.normals[P2.basepoint]]
    pivot = max(j for j in range(l2) if g[j] != 0)
    gamma = g[pivot]
    keep = [j for j in range(l2) if j != pivot]
    normals = [list(row) + [zero] * (l2 - 1) for row in A1.normals]
    for h in range(A2.n):
        if h == P2.basepoint:
            continue
        hvec = [Fraction(c) for c in A2.normals[h]]
        scale = hvec[pivot] / gamma
        row = [ctx.mul(lift(scale), c) if ctx else scale * c for c in fx]
        tail = [lift(hvec[j] - scale * g[j]) for j in keep]
        normals.append(row + tail)
    labels = None
    if A1.labels and A2.labels:
        labels = list(A1.labels) + [A2.labels[h] for h in range(A2.n)
                                    if h != P2.basepoint]
    out = Arrangement.validate(normals, labels=labels, ctx=ctx, dim=l1 + l2 - 1)
    return PointedArrangement.build(out, P1.basepoint)


@dataclass(frozen=True)
class PolarizationBookkeeping:
    base: Multiarrangement
    result: Arrangement
    tags: tuple        # per result hyperplane: ("backbone", H) or ("leaf", H, j)
    n2: int
    n3: int

    def leaf_blocks(self):
        """{backbone index H: list of result indices of its pencil leaves}."""
        blocks = {h: [] for h in range(self.base.arrangement.n)}
        for i, tag in enumerate(self.tags):
            if tag[0] == "leaf":
                blocks[tag[1]].append(i)
        return blocks


def polarize(arr, m) -> PolarizationBookkeeping:
    """The polarization A||m: iterated parallel connection of a pencil
    Pl_{m_H} at every hyperplane with m_H > 1, converting multiplicities
    into honest hyperplanes.  Result order: the backbone (= A's hyperplanes
    in order), then the pencil leaves, grouped per hyperplane in order."""
    ma = Multiarrangement.build(arr, m)
    current = PointedArrangement.build(arr, 0)
    tags = [("backbone", h) for h in range(arr.n)]
    for h, mh in enumerate(ma.m):
        if mh == 1:
            continue
        current = parallel_connect(current, h, pencil_arrangement(mh))
        tags.extend(("leaf", h, j) for j in range(2, mh + 1))
    n2 = sum(1 for x in ma.m if x >= 2)
    n3 = sum(1 for x in ma.m if x >= 3)
    result = current.arrangement
    assert result.n == ma.N
    assert result.rank() == n2 + arr.rank()
    return PolarizationBookkeeping(ma, result, tuple(tags), n2, n3)


# ----------------------------------------------------------------------
# degree-1 transport
# ----------------------------------------------------------------------

def plugin_h1(v1, v2, x):
    """Image of (v1, v2) in H_1 of the connection: off the glued pair the
    basis maps identically, the glued hyperplane x sweeps all of E2's
    coordinates, and E2's basepoint sweeps all of E1's."""
    v1, v2 = list(v1), list(v2)
    n2 = len(v2)
    e2 = 0  # pencil convention: basepoint first in E2
    out = [a + v2[e2] for a in v1]
    out.extend(v2[f] + v1[x] for f in range(n2) if f != e2)
    return out


def plugin_h1_projective_matrix(n1, n2, x):
    """Matrix of plugin_h1 on the quotients modulo all-ones vectors, in the
    bases dropping the last coordinate of each factor and of the target."""
    def unit(size, i):
        return [1 if t == i else 0 for t in range(size)]

    cols = [plugin_h1(unit(n1, i), [0] * n2, x) for i in range(n1 - 1)]
    cols += [plugin_h1([0] * n1, unit(n2, f), x) for f in range(n2 - 1)]
    n = n1 + n2 - 1
    reduced = []
    for col in cols:
        last = col[-1]
        reduced.append([c - last for c in col[:-1]])
    # rows x cols matrix
    return [[reduced[j][i] for j in range(len(reduced))] for i in range(n - 1)]


def is_unimodular(matrix):
    if not matrix or len(matrix) != len(matrix[0]):
        return False
    snf = smith_normal_form(matrix)
    return snf.rank == len(matrix) and all(d == 1 for d in snf.invariant_factors)


def theta_star(book, w):
    """Restrict a degree-1 cohomology class on the polarized complement to
    the backbone and the pencils.

    `w` is an integer exponent vector on A||m whose sum vanishes mod N.
    Returns (backbone class on A, {H: class on the pencil P_{m_H}}), with
    each output an integer vector of exact coordinate sum 0; the pencil
    class of H is (-sum of leaf values, leaf values...).
    """
    ma = book.base
    N = ma.N
    w = list(w)
    if len(w) != N:
        raise ValueError("class length != polarized hyperplane count")
    if sum(w) % N != 0:
        raise ValueError("class is not projective (coordinates sum != 0 mod N)")
    blocks = book.leaf_blocks()
    backbone = []
    pencils = {}
    for h in range(ma.arrangement.n):
        leaves = [w[i] for i in blocks[h]]
        backbone.append(w[h] + sum(leaves))
        pencils[h] = tuple([-sum(leaves)] + leaves)
    total = sum(backbone)
    assert total % N == 0
    backbone[0] -= total
    return tuple(backbone), pencils


def epsilon_class(m_h):
    """The pencil class produced by the all-ones (Milnor) character:
    (1 - m, 1, ..., 1)."""
    return tuple([1 - m_h] + [1] * (m_h - 1))
