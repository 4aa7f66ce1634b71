"""Degree-1 jump loci of rank-1 local systems and finite cyclic covers.

Two interchangeable backends answer "how big is twisted homology at a
finite-order character": an explicit stratification of the jump loci by
torsion-translated subtori, or direct Fox-calculus computation from a
presentation.  On top of either one sit the finite-cover dimension count
(summing depths over the image of the character), the characteristic
polynomial of the algebraic monodromy, the formal Delta(u, x) polynomial,
and the two-characteristic torsion comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .exact import (cyclotomic_poly, euler_phi, field_context,
                    smith_normal_form)
from .fpgroups import Character, Presentation, twisted_betti_01


# ----------------------------------------------------------------------
# translated tori and stratifications
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TranslatedTorus:
    """A component rho*T of a jump locus: a saturated direction subtorus
    given by integer exponent rows, a finite-order translate, a depth, and
    the characteristics in which the component is present."""
    degree: int
    basis: tuple
    translate: Character
    depth: int
    chars: object = "all"   # "all" | ("only", frozenset) | ("except", frozenset)

    @classmethod
    def build(cls, degree, basis, translate, depth, chars="all"):
        basis = tuple(tuple(int(x) for x in row) for row in basis)
        if basis:
            snf = smith_normal_form([list(r) for r in basis])
            if any(d != 1 for d in snf.invariant_factors):
                raise ValueError("direction basis is not saturated")
        if depth < 1:
            raise ValueError("depth must be >= 1")
        return cls(degree, basis, translate, depth, chars)

    def applies_in_char(self, p):
        if self.chars == "all":
            return True
        kind, primes = self.chars
        if kind == "only":
            return p in primes
        if kind == "except":
            return p not in primes
        raise ValueError(f"bad characteristic selector {self.chars!r}")


@dataclass(frozen=True)
class Stratification:
    rank: int                 # number of ambient character coordinates
    betti: tuple              # untwisted Betti numbers b_0, b_1, ...
    components: tuple         # TranslatedTorus values

    @classmethod
    def build(cls, rank, betti, components):
        components = tuple(components)
        for comp in components:
            if comp.basis and any(len(r) != rank for r in comp.basis):
                raise ValueError("component basis width != ambient rank")
            if len(comp.translate.exponents) != rank:
                raise ValueError("translate width != ambient rank")
        return cls(rank, tuple(int(b) for b in betti), components)


def _kill_p_part(sigma, p):
    """Replace a finite-order character by a power of itself whose order is
    the prime-to-p part of the original order."""
    k = sigma.order
    a = 0
    while k % p == 0:
        k //= p
        a += 1
    if a == 0:
        return sigma
    pa = sigma.order // k
    # m = 0 mod p^a, 1 mod k
    m = 0 if k == 1 else (pow(pa, -1, k) * pa) % sigma.order
    new = Character.build(sigma.order, [m * e for e in sigma.exponents])
    # the order now divides k; renormalize
    step = sigma.order // k
    assert all(e % step == 0 for e in new.exponents)
    return Character.build(k, [e // step for e in new.exponents])


def char_in_component(rho, comp, ctx):
    """Is rho in the translated torus, over the given coefficient field?

    rho lies in sigma*T iff rho*sigma^-1 is a torsion point of T; in
    characteristic p the character group has no p-torsion, so sigma's
    p-primary part is removed first.
    """
    p = ctx.char
    if not comp.applies_in_char(p):
        raise ValueError("component not present in this characteristic")
    sigma = comp.translate
    if p:
        sigma = _kill_p_part(sigma, p)
    L = lcm(rho.order, sigma.order)
    v = [(e1 * (L // rho.order) - e2 * (L // sigma.order)) % L
         for e1, e2 in zip(rho.exponents, sigma.exponents)]
    n = len(v)
    if not comp.basis:
        return all(x % L == 0 for x in v)
    snf = smith_normal_form([list(r) for r in comp.basis], want_V=True)
    assert snf.V is not None, "saturated basis never needs a divisibility fixup"
    # x*B = v mod L  <=>  y*D = v*V mod L with D = U*B*V; solvable iff
    # gcd(d_i, L) | w_i on the pivot block and w_i = 0 mod L beyond it.
    w = [sum(v[i] * snf.V[i][j] for i in range(n)) % L for j in range(n)]
    r = snf.rank
    for i in range(r):
        if w[i] % gcd(snf.invariant_factors[i], L) != 0:
            return False
    return all(w[j] % L == 0 for j in range(r, n))


# ----------------------------------------------------------------------
# jump sources
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class JumpSource:
    """Either a stratification of the jump loci, or a presentation for Fox
    computation (degree <= 1; degree 2 available by Euler completion when
    a rank-3 arrangement is attached)."""
    stratification: Stratification | None = None
    presentation: Presentation | None = None
    arrangement: object = None

    @classmethod
    def from_stratification(cls, strat):
        return cls(stratification=strat)

    @classmethod
    def from_presentation(cls, pres, arrangement=None):
        if arrangement is not None and pres.kind != "projective":
            raise ValueError("Euler completion needs the projectivized group")
        return cls(presentation=pres, arrangement=arrangement)

    @property
    def nvars(self):
        if self.stratification is not None:
            return self.stratification.rank
        return self.presentation.ngens

    def euler_char(self):
        poly = self.arrangement.os_poincare_rank3()
        return sum(c * (-1) ** i for i, c in enumerate(poly))

    def betti(self, q):
        if self.stratification is not None:
            b = self.stratification.betti
            return b[q] if q < len(b) else 0
        if q == 0:
            return 1
        if q == 1:
            return self.presentation.b1()
        if q == 2 and self.arrangement is not None:
            return self.euler_char() - 1 + self.presentation.b1()
        raise ValueError(f"degree {q} unsupported by this backend")

    def max_degree(self):
        if self.stratification is not None:
            return len(self.stratification.betti) - 1
        return 2 if self.arrangement is not None else 1


def jump_depth(source, q, rho, ctx):
    """dim of degree-q twisted homology at rho (stratification backend:
    max depth of a containing component; 1 jumps at the Betti number)."""
    if all(e % rho.order == 0 for e in rho.exponents):
        return source.betti(q)
    if source.stratification is not None:
        best = 0
        for comp in source.stratification.components:
            if comp.degree != q or not comp.applies_in_char(ctx.char):
                continue
            if comp.depth > best and char_in_component(rho, comp, ctx):
                best = comp.depth
        return best
    if q == 0:
        return 0
    if q == 1:
        return twisted_betti_01(source.presentation, rho, ctx)[1]
    if q == 2 and source.arrangement is not None:
        h0, h1 = twisted_betti_01(source.presentation, rho, ctx)
        h2 = source.euler_char() - h0 + h1
        assert h2 >= 0
        return h2
    raise ValueError(f"degree {q} unsupported by this backend")


# ----------------------------------------------------------------------
# covers
# ----------------------------------------------------------------------

def _check_cover_args(chi, ctx):
    if ctx.char and chi.order % ctx.char == 0:
        raise ValueError("field characteristic divides the cover order")
    if not chi.is_surjective():
        raise ValueError("character is not surjective onto Z_r")


def _depth_classes(r, char):
    """Partition of Z_r into classes with equal jump depth: conjugate
    characters have isomorphic twisted complexes, so depths are constant
    on orbits of j -> u*j over units u (char 0: the full Galois group;
    char p: the subgroup generated by p, i.e. Frobenius)."""
    seen = [False] * r
    classes = []
    for j in range(r):
        if seen[j]:
            continue
        orbit = {j}
        if char == 0:
            d = gcd(j, r)
            orbit = {x for x in range(r) if gcd(x, r) == d} if j else {0}
        else:
            x = j
            while True:
                x = x * char % r
                if x in orbit:
                    break
                orbit.add(x)
        for x in orbit:
            seen[x] = True
        classes.append((j, len(orbit)))
    return classes


def _depth_map(source, chi, ctx, q):
    """jump depth for every power of chi, one Fox computation per class."""
    r = chi.order
    out = {}
    for rep, _size in _depth_classes(r, ctx.char):
        d = jump_depth(source, q, chi.power(rep), ctx)
        if ctx.char == 0:
            g = gcd(rep, r)
            for j in range(r):
                if gcd(j, r) == g:
                    out[j] = d
        else:
            out[rep] = d
            x = rep
            while True:
                x = x * ctx.char % r
                if x == rep:
                    break
                out[x] = d
    return out


def cover_homology(source, chi, ctx, q=1):
    """dim of H_q of the r-fold cyclic cover classified by chi, as the sum
    of jump depths over the r characters in the image of chi-hat."""
    _check_cover_args(chi, ctx)
    depths = _depth_map(source, chi, ctx, q)
    return sum(depths.values())


# ----------------------------------------------------------------------
# characteristic polynomials  prod Phi_k(t)^{e_k}
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CharPoly:
    phi: tuple  # sorted ((k, e_k)) with e_k > 0

    @classmethod
    def build(cls, multiplicities):
        items = tuple(sorted((int(k), int(e)) for k, e in dict(multiplicities).items()
                             if e))
        if any(e < 0 for _, e in items):
            raise ValueError("negative multiplicity")
        return cls(items)

    def as_dict(self):
        return dict(self.phi)

    def degree(self):
        return sum(e * euler_phi(k) for k, e in self.phi)

    def coefficients(self):
        """Expanded integer coefficient list, low degree first."""
        poly = [1]
        for k, e in self.phi:
            f = cyclotomic_poly(k)
            for _ in range(e):
                out = [0] * (len(poly) + len(f) - 1)
                for i, a in enumerate(poly):
                    for j, b in enumerate(f):
                        out[i + j] += a * b
                poly = out
        return poly

    def __str__(self):
        if not self.phi:
            return "1"
        parts = []
        for k, e in self.phi:
            f = cyclotomic_poly(k)
            terms = []
            for i in range(len(f) - 1, -1, -1):
                c = f[i]
                if c == 0:
                    continue
                if i == 0:
                    terms.append(f"{c:+d}".replace("+", " + ").replace("-", " - "))
                else:
                    mono = "t" if i == 1 else f"t^{i}"
                    sign = " + " if c > 0 else " - "
                    mag = "" if abs(c) == 1 else str(abs(c))
                    terms.append(sign + mag + mono)
            s = "".join(terms).lstrip(" +")
            parts.append(f"({s})" + (f"^{e}" if e != 1 else ""))
        return "".join(parts)


def depth_table(source, chi, ctx, q=1):
    """(j, order, depth) for each power of chi."""
    _check_cover_args(chi, ctx)
    r = chi.order
    depths = _depth_map(source, chi, ctx, q)
    return [(j, r // gcd(j, r), depths[j]) for j in range(r)]


def monodromy_charpoly(source, chi, ctx, q=1) -> CharPoly:
    """Characteristic polynomial of the degree-q algebraic monodromy of the
    cover, grouped Galois-stably into cyclotomic powers."""
    totals = {}
    for _, k, d in depth_table(source, chi, ctx, q):
        totals[k] = totals.get(k, 0) + d
    mult = {}
    for k, tot in totals.items():
        phi = euler_phi(k)
        if tot % phi != 0:
            raise AssertionError(
                f"order-{k} character count {tot} not divisible by phi={phi}")
        if tot:
            mult[k] = tot // phi
    return CharPoly.build(mult)


# ----------------------------------------------------------------------
# punctured lines and Delta(u, x)
# ----------------------------------------------------------------------

def poin_punctured_line(n, trivial):
    """Twisted Poincare polynomial of the complex line minus n points
    (1 + n x untwisted, (n-1) x twisted; a point for n = 0)."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return [1] if trivial else [0]
    return [1, n] if trivial else [0, n - 1]


@dataclass(frozen=True)
class UPoly:
    """Polynomial in x whose coefficients are integer combinations of
    formal symbols u_k: stored as ((degree, ((k, coeff), ...)), ...)."""
    terms: tuple

    @classmethod
    def build(cls, table):
        # table: {degree: {k: coeff}}
        out = []
        for deg in sorted(table):
            row = tuple(sorted((k, c) for k, c in table[deg].items() if c))
            if row:
                out.append((deg, row))
        return cls(tuple(out))

    def as_table(self):
        return {deg: dict(row) for deg, row in self.terms}

    def add(self, other):
        table = self.as_table()
        for deg, row in other.as_table().items():
            dst = table.setdefault(deg, {})
            for k, c in row.items():
                dst[k] = dst.get(k, 0) + c
        return UPoly.build(table)

    def sub(self, other):
        table = self.as_table()
        for deg, row in other.as_table().items():
            dst = table.setdefault(deg, {})
            for k, c in row.items():
                dst[k] = dst.get(k, 0) - c
        return UPoly.build(table)

    def coefficient(self, degree):
        """{k: coeff} at x^degree."""
        return self.as_table().get(degree, {})

    def specialize_u(self, value=1):
        """Plain coefficient list with every u_k set to `value`."""
        table = self.as_table()
        if not table:
            return [0]
        top = max(table)
        return [value * sum(table.get(d, {}).values()) for d in range(top + 1)]

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for deg, row in self.terms:
            coeff = " + ".join(
                (f"{c}*u{k}" if c != 1 else f"u{k}") for k, c in row)
            if len(row) > 1:
                coeff = f"({coeff})"
            if deg == 0:
                chunks.append(coeff)
            elif deg == 1:
                chunks.append(f"{coeff}*x")
            else:
                chunks.append(f"{coeff}*x^{deg}")
        return " + ".join(chunks)


def _accumulate(table, k, poly):
    for deg, c in enumerate(poly):
        if c:
            row = table.setdefault(deg, {})
            row[k] = row.get(k, 0) + c


def delta_u_poly(source, chi, ctx, max_degree=None) -> UPoly:
    """Delta(u, x) = sum over rho in im(chi-hat) of u_|rho| Poin(X, rho; x)."""
    _check_cover_args(chi, ctx)
    r = chi.order
    if max_degree is None:
        max_degree = source.max_degree()
    table = {}
    for j in range(r):
        k = r // gcd(j, r)
        rho = chi.power(j)
        poin = [jump_depth(source, q, rho, ctx) for q in range(max_degree + 1)]
        _accumulate(table, k, poin)
    return UPoly.build(table)


def delta_product(factors, chi, ctx) -> UPoly:
    """Delta(u, x) of a cover of a product space: per character, the product
    of the factors' twisted Poincare polynomials.

    Each factor is a pair (width, poin) where poin(sub_exponents, order, ctx)
    returns a plain coefficient list; chi's exponent vector is split along
    the widths.
    """
    _check_cover_args(chi, ctx)
    widths = [w for w, _ in factors]
    if sum(widths) != len(chi.exponents):
        raise ValueError("character does not split along the factors")
    r = chi.order
    table = {}
    for j in range(r):
        k = r // gcd(j, r)
        rho = chi.power(j)
        poly = [1]
        pos = 0
        for w, poin in factors:
            sub = rho.exponents[pos:pos + w]
            pos += w
            f = poin(sub, r, ctx)
            out = [0] * (len(poly) + len(f) - 1)
            for i, a in enumerate(poly):
                for jj, b in enumerate(f):
                    out[i + jj] += a * b
            poly = out
            if all(c == 0 for c in poly):
                break
        _accumulate(table, k, poly)
    return UPoly.build(table)


def presentation_factor(source):
    """delta_product factor wrapping a jump source."""
    def poin(sub, order, ctx):
        rho = Character.build(order, sub)
        return [jump_depth(source, q, rho, ctx)
                for q in range(source.max_degree() + 1)]
    return (source.nvars, poin)


def pencil_factor(m):
    """delta_product factor for the pencil of m concurrent lines: its
    projectivized complement is the line minus m - 1 points.  The character
    carries one exponent per line; it is trivial iff all are zero."""
    def poin(sub, order, ctx):
        trivial = all(e % order == 0 for e in sub)
        return poin_punctured_line(m - 1, trivial)
    return (m, poin)


# ----------------------------------------------------------------------
# torsion detection by comparing characteristics
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionCertificate:
    prime: int
    degree: int
    bound: int          # lower bound on the Z_p-torsion rank
    chain: tuple        # provenance records (stage, payload) as strings/dicts
    dim_char0: int
    dim_charp: int
    witnesses: tuple    # powers j of chi where the depths differ
    integral: object = None   # optional AbelianGroup confirmation
    charpoly: object = None   # optional CharPoly over char p

    def to_dict(self):
        out = {"prime": self.prime, "degree": self.degree, "bound": self.bound,
               "chain": list(self.chain),
               "dim_char0": self.dim_char0, "dim_charp": self.dim_charp,
               "witnesses": list(self.witnesses)}
        if self.integral is not None:
            out["integral"] = {"rank": self.integral.rank,
                               "torsion": list(self.integral.torsion)}
        if self.charpoly is not None:
            out["charpoly"] = {"phi": {str(k): e for k, e in self.charpoly.phi}}
        return out


def torsion_detect(source, chi, p, q=1, chain=()):
    """Compare cover homology in characteristics 0 and p; a strict increase
    certifies Z_p-torsion of at least that rank in H_q of the cover.  When
    no nontrivial complex character of the image jumps at all, the kernel
    bound r - 1 applies as well.  Returns None when dimensions agree."""
    r = chi.order
    if p and r % p == 0:
        raise ValueError("p divides the cover order")
    ctx0 = field_context(0, r)
    ctxp = field_context(p, r)
    t0 = depth_table(source, chi, ctx0, q)
    tp = depth_table(source, chi, ctxp, q)
    d0 = sum(d for _, _, d in t0)
    dp = sum(d for _, _, d in tp)
    assert dp >= d0, "positive characteristic can only increase dimensions"
    bound = dp - d0
    # kernel bound: if no nontrivial complex character jumps but every
    # characteristic-p one does, the torsion rank is at least r - 1
    if (q == 1 and all(d == 0 for j, _, d in t0 if j % r != 0)
            and all(d >= 1 for j, _, d in tp if j % r != 0)):
        bound = max(bound, r - 1)
    if bound <= 0:
        return None
    witnesses = tuple(j for (j, _, a), (_, _, b) in zip(t0, tp) if a != b)
    return TorsionCertificate(
        prime=p, degree=q, bound=bound, chain=tuple(chain),
        dim_char0=d0, dim_charp=dp, witnesses=witnesses)


# ----------------------------------------------------------------------
# stratification serialization
# ----------------------------------------------------------------------

def stratification_to_dict(strat):
    comps = []
    for c in strat.components:
        if c.chars == "all":
            chars = "all"
        else:
            kind, primes = c.chars
            chars = {kind: sorted(primes)}
        comps.append({"degree": c.degree,
                      "basis": [list(r) for r in c.basis],
                      "translate": {"order": c.translate.order,
                                    "exponents": list(c.translate.exponents)},
                      "depth": c.depth,
                      "chars": chars})
    return {"rank": strat.rank, "betti": list(strat.betti), "components": comps}


def stratification_from_dict(data):
    comps = []
    for cd in data["components"]:
        chars = cd.get("chars", "all")
        if chars != "all":
            (kind, primes), = chars.items()
            chars = (kind, frozenset(primes))
        tr = cd["translate"]
        comps.append(TranslatedTorus.build(
            cd["degree"], cd["basis"],
            Character.build(tr["order"], tr["exponents"]),
            cd["depth"], chars))
    return Stratification.build(data["rank"], data["betti"], comps)
