"""Finitely presented groups: Fox calculus, real-sweep presentations of
arrangement groups, Reidemeister-Schreier rewriting, and integral H1 of
finite-index kernels.

Words are tuples of signed 1-based generator indices; `-k` is the inverse
of generator `k`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import (AbelianGroup, FieldMatrix, cyclotomic_poly, euler_phi,
                    field_context, int_matrix_rank, matrix_rank,
                    rank_lower_bound, smith_normal_form)


# ----------------------------------------------------------------------
# words
# ----------------------------------------------------------------------

def free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word):
    word = list(free_reduce(word))
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


def invert_word(word):
    return tuple(-letter for letter in reversed(word))


def word_exponents(word, ngens):
    v = [0] * ngens
    for letter in word:
        v[abs(letter) - 1] += 1 if letter > 0 else -1
    return v


def _canonical_relator(word):
    """Minimal rotation among the cyclic word and its inverse, for dedup."""
    word = cyclic_reduce(word)
    if not word:
        return ()
    best = None
    for w in (word, invert_word(word)):
        for i in range(len(w)):
            rot = w[i:] + w[:i]
            if best is None or rot < best:
                best = rot
    return best


# ----------------------------------------------------------------------
# presentations and characters
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple
    labels: tuple | None = None
    # 'projective': generators are meridians of a projectivized arrangement
    # complement; 'affine': meridians of the cone complement M = U x C*;
    # 'abstract': anything else.
    kind: str = "abstract"

    @classmethod
    def build(cls, ngens, relators, labels=None, kind="abstract"):
        rels = []
        for rel in relators:
            rel = cyclic_reduce(tuple(rel))
            for letter in rel:
                if not (1 <= abs(letter) <= ngens):
                    raise ValueError(f"letter {letter} out of range")
            if rel:
                rels.append(rel)
        return cls(ngens, tuple(rels), tuple(labels) if labels else None, kind)

    def abelianized_relations(self):
        return [word_exponents(rel, self.ngens) for rel in self.relators]

    def b1(self):
        rows = self.abelianized_relations()
        return self.ngens - (int_matrix_rank(rows) if rows else 0)

    def abelianization(self):
        return AbelianGroup.from_relations(self.abelianized_relations(), self.ngens)


@dataclass(frozen=True)
class Character:
    """Character into Z_r given by per-generator exponents."""
    order: int
    exponents: tuple

    @classmethod
    def build(cls, order, exponents):
        if order < 1:
            raise ValueError("order must be >= 1")
        return cls(order, tuple(e % order for e in exponents))

    def is_trivial(self):
        return all(e == 0 for e in self.exponents)

    def is_surjective(self):
        g = self.order
        for e in self.exponents:
            g = gcd(g, e)
        return g == 1

    def is_projective(self):
        return sum(self.exponents) % self.order == 0

    def power(self, j):
        return Character.build(self.order, [j * e for e in self.exponents])

    def value(self, word):
        a = 0
        for letter in word:
            e = self.exponents[abs(letter) - 1]
            a += e if letter > 0 else -e
        return a % self.order


def character_order_in_image(chi, j):
    """Order of the j-th power character of a Z_r character."""
    return chi.order // gcd(j, chi.order)


# ----------------------------------------------------------------------
# Fox calculus
# ----------------------------------------------------------------------

def fox_group_algebra_rows(pres, chi):
    """Fox derivative matrix with entries in the group algebra Z[Z_r],
    each entry a length-r integer vector of coefficients of zeta^a.

    Rules: d(uv)/dx = du/dx + rho(u) dv/dx, dx/dx = 1, dx^-1/dx = -rho(x)^-1.
    """
    r = chi.order
    rows = []
    for rel in pres.relators:
        row = [[0] * r for _ in range(pres.ngens)]
        a = 0
        for letter in rel:
            g = abs(letter) - 1
            e = chi.exponents[g]
            if letter > 0:
                row[g][a % r] += 1
                a += e
            else:
                a -= e
                row[g][a % r] -= 1
        rows.append(row)
    return rows


def _embed_order(chi, ctx):
    if ctx.N % chi.order != 0:
        raise ValueError(f"context root order {ctx.N} has no order-{chi.order} root")
    return ctx.N // chi.order


def fox_jacobian(pres, chi, ctx) -> FieldMatrix:
    """(relators x generators) matrix of Fox derivatives evaluated at the
    character iota . chi, where iota sends 1 to a fixed order-r root in ctx."""
    step = _embed_order(chi, ctx)
    rows = fox_group_algebra_rows(pres, chi)
    out = []
    for row in rows:
        out_row = []
        for entry in row:
            val = ctx.zero
            for a, c in enumerate(entry):
                if c:
                    val = ctx.add(val, ctx.mul(ctx.from_int(c), ctx.zeta_pow(a * step)))
            out_row.append(val)
        out.append(out_row)
    if not out:
        out = []
    return FieldMatrix.build(ctx, out) if out else FieldMatrix(ctx, ())


def character_is_trivial_in_ctx(chi):
    return all(e % chi.order == 0 for e in chi.exponents)


def twisted_betti_01(pres, chi, ctx):
    """(h0, h1) of the presentation 2-complex with rho = iota . chi.

    h0 = 1 iff rho trivial; h1 = g - rank(d1) - rank(Fox Jacobian), where
    rank(d1) is 1 for rho != 1 and 0 for rho = 1.
    """
    trivial = character_is_trivial_in_ctx(chi)
    if trivial:
        rows = pres.abelianized_relations()
        if ctx.char == 0:
            rank = int_matrix_rank(rows) if rows else 0
        else:
            import numpy as np
            from . import _modp
            rank = _modp.rank_mod_p(np.array(rows, dtype=np.int64), ctx.char) if rows else 0
        return 1, pres.ngens - rank
    J = fox_jacobian(pres, chi, ctx)
    if not J.rows:
        return 0, pres.ngens - 1
    if ctx.char == 0 and pres.ngens - 1 - rank_lower_bound(J) == 0:
        # the specialized rank never exceeds the true rank, so a zero
        # here is already exact; skip the costly cyclotomic elimination
        return 0, 0
    return 0, pres.ngens - 1 - matrix_rank(J)


def phi_module_rank(pres, chi, k):
    """rank_Z of H1 of the Fox complex with coefficients in Z[t]/Phi_k,
    the character acting by t^chi; equals phi(k) * (order-k jump depth)."""
    r = chi.order
    if r % k != 0:
        raise ValueError(f"{k} does not divide the character order {r}")
    d = euler_phi(k)
    phi = cyclotomic_poly(k)
    # companion matrix of Phi_k (action of t), and its powers t^0..t^(k-1)
    comp = [[0] * d for _ in range(d)]
    for i in range(1, d):
        comp[i][i - 1] = 1
    for i in range(d):
        comp[i][d - 1] = -phi[i]
    powers = [_identity(d)]
    for _ in range(k - 1):
        powers.append(_int_matmul(powers[-1], comp))
    # d1: g*d x d block column of (t^chi_i - 1)
    ident = _identity(d)
    d1_rows = []
    for e in chi.exponents:
        blk = powers[e % k]
        for i in range(d):
            d1_rows.append([blk[i][j] - ident[i][j] for j in range(d)])
    rank_d1 = int_matrix_rank(d1_rows) if d1_rows else 0
    # d2: Fox matrix expanded
    rows = fox_group_algebra_rows(pres, chi)
    big = []
    for row in rows:
        for i in range(d):
            big_row = []
            for entry in row:
                acc = [0] * d
                for a, c in enumerate(entry):
                    if c:
                        blk = powers[a % k]
                        for j in range(d):
                            acc[j] += c * blk[i][j]
                big_row.extend(acc)
            big.append(big_row)
    rank_d2 = int_matrix_rank(big) if big else 0
    return d * pres.ngens - rank_d1 - rank_d2


def _identity(d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def _int_matmul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


# ----------------------------------------------------------------------
# Reidemeister-Schreier
# ----------------------------------------------------------------------

@dataclass
class SchreierData:
    presentation: Presentation
    orders: tuple           # target A = Z_a1 + ... + Z_ak
    transversal: dict       # coset tuple -> representative word (downstairs)
    gen_index: dict         # (coset tuple, downstairs gen) -> upstairs index or None
    ab_vectors: list        # per upstairs generator: downstairs H1 class
    base: Presentation

    def rewrite(self, word, start=None):
        """Rewrite a kernel element (or a conjugated relator) upstairs."""
        orders = self.orders
        c = start if start is not None else tuple(0 for _ in orders)
        out = []
        for letter in word:
            g = abs(letter) - 1
            v = self.values[g]
            if letter > 0:
                idx = self.gen_index[(c, g)]
                if idx is not None:
                    out.append(idx + 1)
                c = tuple((x + y) % o for x, y, o in zip(c, v, orders))
            else:
                c = tuple((x - y) % o for x, y, o in zip(c, v, orders))
                idx = self.gen_index[(c, g)]
                if idx is not None:
                    out.append(-(idx + 1))
        return free_reduce(out)


def reidemeister_schreier_abelian(pres, orders, values):
    """Presentation of the kernel of G -> Z_a1 + ... + Z_ak.

    `values` lists, per generator, its image exponent tuple.  The Schreier
    transversal is prefix-closed: powers of a unit-valued generator in the
    cyclic case, else BFS-minimal words.
    """
    orders = tuple(int(a) for a in orders)
    k = len(orders)
    values = [tuple(v[i] % orders[i] for i in range(k)) for v in values]
    # surjectivity: cokernel of [values; diag(orders)] must vanish
    rel = [list(v) for v in values] + \
          [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    if AbelianGroup.from_relations(rel, k) != AbelianGroup(0, ()):
        raise ValueError("character not surjective onto the target group")

    index = 1
    for a in orders:
        index *= a

    # transversal
    transversal = {}
    zero = tuple(0 for _ in orders)
    unit_gen = None
    if k == 1:
        r = orders[0]
        for g, v in enumerate(values):
            if gcd(v[0], r) == 1:
                unit_gen = (g, v[0])
                break
    if unit_gen is not None:
        g, val = unit_gen
        r = orders[0]
        inv = pow(val, -1, r)
        reps = {}
        for j in range(r):
            reps[(j * val) % r] = j
        for c in range(r):
            j = (c * inv) % r
            transversal[(c,)] = tuple([g + 1] * j)
    else:
        transversal[zero] = ()
        queue = [zero]
        while queue:
            c = queue.pop(0)
            for g, v in enumerate(values):
                for sign in (1, -1):
                    nc = tuple((x + sign * y) % o for x, y, o in zip(c, v, orders))
                    if nc not in transversal:
                        transversal[nc] = transversal[c] + (sign * (g + 1),)
                        queue.append(nc)
        assert len(transversal) == index

    # Schreier generators; tree edges (rep[c] * g freely equal to rep[c g])
    gen_index = {}
    ab_vectors = []
    counter = 0
    cosets = sorted(transversal.keys())
    for c in cosets:
        for g in range(pres.ngens):
            nc = tuple((x + y) % o for x, y, o in zip(c, values[g], orders))
            word = free_reduce(transversal[c] + (g + 1,) + invert_word(transversal[nc]))
            if not word:
                gen_index[(c, g)] = None
            else:
                gen_index[(c, g)] = counter
                ab_vectors.append(word_exponents(word, pres.ngens))
                counter += 1

    data = SchreierData.__new__(SchreierData)
    data.orders = orders
    data.transversal = transversal
    data.gen_index = gen_index
    data.ab_vectors = ab_vectors
    data.values = values
    data.base = pres

    relators = []
    for c in cosets:
        for rel in pres.relators:
            w = data.rewrite(rel, start=c)
            if w:
                relators.append(w)
    data.presentation = Presentation.build(counter, relators)
    assert counter == index * pres.ngens - (index - 1)
    return data


def reidemeister_schreier(pres, chi) -> Presentation:
    """Kernel presentation for a surjective cyclic character."""
    if chi.order == 1:
        return pres
    data = reidemeister_schreier_abelian(
        pres, (chi.order,), [(e,) for e in chi.exponents])
    return data.presentation


def integral_h1_kernel(pres, chi) -> AbelianGroup:
    """H1(ker chi, Z) by abelianizing the Reidemeister-Schreier presentation."""
    kernel = reidemeister_schreier(pres, chi)
    return kernel.abelianization()


# ----------------------------------------------------------------------
# Tietze simplification
# ----------------------------------------------------------------------

def simplify_presentation(pres, ab_vectors=None, max_sub_len=None):
    """Eliminate generators that occur exactly once in some relator.

    Returns (presentation, kept_generator_indices, ab_vectors-or-None).
    Intrinsic per-generator data (like downstairs H1 classes) survives
    because only *kept* generators retain meaning.
    """
    relators = [list(cyclic_reduce(r)) for r in pres.relators]
    ngens = pres.ngens
    alive = list(range(ngens))  # original index per current slot

    def occurrences(rel, g):
        return [i for i, letter in enumerate(rel) if abs(letter) == g + 1]

    changed = True
    while changed:
        changed = False
        # normalize: reduce, drop empties and duplicates
        seen = set()
        cleaned = []
        for rel in relators:
            w = _canonical_relator(tuple(rel))
            if w and w not in seen:
                seen.add(w)
                cleaned.append(list(w))
        relators = cleaned
        # pick an elimination: shortest relator with a unique occurrence
        best = None
        for ri, rel in enumerate(relators):
            if max_sub_len is not None and len(rel) > max_sub_len:
                continue
            counts = {}
            for letter in rel:
                counts[abs(letter) - 1] = counts.get(abs(letter) - 1, 0) + 1
            for g, cnt in counts.items():
                if cnt == 1:
                    if best is None or len(rel) < len(relators[best[0]]):
                        best = (ri, g)
                    break
        if best is None:
            break
        ri, g = best
        rel = relators.pop(ri)
        pos = occurrences(rel, g)[0]
        # rotate so the occurrence is first: rel = g^eps * tail
        rel = rel[pos:] + rel[:pos]
        head, tail = rel[0], rel[1:]
        if head > 0:
            sub = invert_word(tail)        # g = tail^-1
        else:
            sub = tuple(tail)              # g^-1 = tail  =>  g = tail
        # substitute in every relator
        new_relators = []
        for other in relators:
            out = []
            for letter in other:
                if abs(letter) == g + 1:
                    out.extend(sub if letter > 0 else invert_word(sub))
                else:
                    out.append(letter)
            new_relators.append(list(free_reduce(out)))
        # delete generator g: shift indices above g down by one
        def shift(letter):
            a = abs(letter)
            assert a != g + 1
            return (a - 1 if a > g + 1 else a) * (1 if letter > 0 else -1)
        relators = [[shift(l) for l in rel2] for rel2 in new_relators]
        alive.pop(g)
        ngens -= 1
        changed = True

    out_pres = Presentation.build(ngens, [tuple(r) for r in relators], kind=pres.kind)
    out_ab = [ab_vectors[i] for i in alive] if ab_vectors is not None else None
    return out_pres, alive, out_ab


# ----------------------------------------------------------------------
# sweep presentations of real rank-3 arrangement groups
# ----------------------------------------------------------------------

def _slice_lines(arr, seed):
    """Intersect the central arrangement with an affine plane
    v0 + s*d1 + t*d2; return per-hyperplane (slope, intercept) with
    t = slope*s + intercept, or None if the choice is degenerate."""
    a = Fraction(2 * seed + 2)
    b = a + 1
    d1 = (Fraction(1), a, a * a)
    d2 = (Fraction(1), b, b * b)
    v0 = (Fraction(1), b + 2, Fraction(3 * seed + 7, 2))
    lines = []
    for normal in arr.normals:
        nd1 = sum(n * d for n, d in zip(normal, d1))
        nd2 = sum(n * d for n, d in zip(normal, d2))
        nv0 = sum(n * d for n, d in zip(normal, v0))
        if nd2 == 0:
            return None  # vertical line
        lines.append((-Fraction(nd1, nd2), -Fraction(nv0, nd2)))
    slopes = [m for m, _ in lines]
    if len(set(slopes)) != len(slopes):
        return None  # parallel pair: slice hits the flat at infinity
    return lines


def sweep_presentation(arr, projective=True) -> Presentation:
    """Meridian presentation of the complement of a real (rational) central
    rank-3 arrangement, from a left-to-right sweep of a generic plane slice.

    At a vertex where lines with current meridian words m_1..m_s (top to
    bottom) cross, the monodromy is the full twist: relators [C, m_j] for
    C = m_1...m_s and j < s; past the vertex the wire order reverses and
    the meridians are conjugated accordingly.
    """
    if arr.ctx is not None:
        raise ValueError("sweep presentations need rational normals")
    if arr.rank() != 3:
        raise ValueError("sweep presentations need a rank-3 arrangement")
    flats = arr.rank2_flats()
    n = arr.n
    for seed in range(64):
        lines = _slice_lines(arr, seed)
        if lines is None:
            continue
        # vertex s-coordinates, one per rank-2 flat
        events = []
        ok = True
        svals = set()
        for fl in flats:
            i, j = sorted(fl.hyperplanes)[:2]
            (mi, ci), (mj, cj) = lines[i], lines[j]
            s = Fraction(cj - ci, mi - mj)
            if s in svals:
                ok = False
                break
            svals.add(s)
            events.append((s, sorted(fl.hyperplanes)))
        if ok:
            break
    else:
        raise AssertionError("no generic slice found (degenerate input?)")
    events.sort()
    s0 = min(s for s, _ in events) - 1
    order = sorted(range(n), key=lambda i: (-(lines[i][0] * s0 + lines[i][1]),
                                            -lines[i][0]))
    wires = list(order)  # top to bottom
    mer = {i: (i + 1,) for i in range(n)}  # current meridian word per line
    relators = []
    if projective:
        relators.append(tuple(i + 1 for i in wires))
    for s, members in events:
        pos = sorted(wires.index(i) for i in members)
        lo, hi = pos[0], pos[-1]
        if pos != list(range(lo, hi + 1)):
            raise AssertionError("flat lines not consecutive at vertex")
        block = wires[lo:hi + 1]
        mu = [mer[i] for i in block]
        C = tuple(itertools.chain.from_iterable(mu))
        invC = invert_word(C)
        for j in range(len(mu) - 1):
            relators.append(free_reduce(C + mu[j] + invC + invert_word(mu[j])))
        # update: order reverses; wire formerly j-th from the top leaves
        # with meridian (mu_1..mu_{j-1}) conjugate
        snum = len(block)
        for kpos in range(snum):
            old_j = snum - 1 - kpos
            prefix = tuple(itertools.chain.from_iterable(mu[:old_j]))
            mer[block[old_j]] = free_reduce(prefix + mu[old_j] + invert_word(prefix))
        wires[lo:hi + 1] = list(reversed(block))
    return Presentation.build(n, relators,
                              labels=arr.labels,
                              kind="projective" if projective else "affine")
