"""Milnor fibers of multiarrangements as finite cyclic covers, multiplicity
search, and the end-to-end torsion pipelines.

The Milnor fiber of a multiarrangement is modeled purely as the N-fold
cyclic cover of the projectivized complement classified by the meridian
character x_H -> m_H mod N.  Group models for the complement come either
from a real sweep presentation (projectivized group) or, for the monomial
family, from a branched-cover rewriting of the group of a rational
arrangement (affine group, which carries an extra central C* factor).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd

from .arrangement import Arrangement, Multiarrangement
from .exact import field_context, prime_factors
from .fpgroups import (Character, Presentation, integral_h1_kernel,
                       reidemeister_schreier_abelian, simplify_presentation,
                       sweep_presentation)
from .jumploci import (CharPoly, JumpSource, TorsionCertificate, UPoly,
                       delta_product, jump_depth, monodromy_charpoly,
                       pencil_factor, presentation_factor, torsion_detect)
from .multinet import deletion_pencil_certificate
from .parallel import polarize, theta_star


# ----------------------------------------------------------------------
# the Milnor character
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MilnorSpec:
    multiarrangement: Multiarrangement
    delta: Character
    gcd_warning: bool

    @property
    def N(self):
        return self.multiarrangement.N


def milnor_character(arr, m) -> MilnorSpec:
    """The character x_H -> m_H mod N classifying the Milnor fiber of the
    multiarrangement as a cover of the projectivized complement."""
    ma = Multiarrangement.build(arr, m)
    N = ma.N
    delta = Character.build(N, [x % N for x in ma.m])
    g = 0
    for x in ma.m:
        g = gcd(g, x)
    return MilnorSpec(ma, delta, g != 1)


def recognize_milnor_cover(arr, chi):
    """If some unit multiple of chi lifts to multiplicities of total weight
    exactly N = order of chi, return them (the cover is a Milnor fiber)."""
    N = chi.order
    if sum(chi.exponents) % N != 0:
        raise ValueError("character is not projective")
    for k in range(1, N + 1):
        if gcd(k, N) != 1:
            continue
        mu = [((k * e - 1) % N) + 1 for e in chi.exponents]
        if sum(mu) == N:
            return tuple(mu)
    return None


def find_multiplicities(arr, chi, p, forbid_two=False, max_n=None):
    """Minimal-weight multiplicities m with m = k*chi mod r for some unit k,
    p not dividing N = sum(m), and (optionally) no m_H equal to 2.

    Deterministic lift: per coordinate the least positive residue (skipping
    2 when forbidden), then the first coordinate is bumped by multiples of
    r until p does not divide the total; minimal (N, k) wins.
    """
    r = chi.order
    if p and r % p == 0:
        raise ValueError("p must not divide the character order")
    if arr is not None and len(chi.exponents) != arr.n:
        raise ValueError("character width != hyperplane count")
    best = None
    for k in range(1, r + 1):
        if gcd(k, r) != 1:
            continue
        lift = []
        for e in chi.exponents:
            v = ((k * e - 1) % r) + 1
            if forbid_two and v == 2:
                v += r
            lift.append(v)
        total = sum(lift)
        bump = 0
        while total % p == 0:
            bump += r
            total += r
        lift[0] += bump
        if forbid_two and lift[0] == 2:
            lift[0] += r
            total += r
        if max_n is not None and total > max_n:
            continue
        if best is None or (total, k) < best[:2]:
            best = (total, k, tuple(lift))
    if best is None:
        raise ValueError("no admissible multiplicities under the given cap")
    return best[2]


# ----------------------------------------------------------------------
# group models of the complement
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupModel:
    """A presentation of the (projectivized or affine) complement group
    together with the translation from per-hyperplane exponent vectors to
    per-generator characters.  `cstar_factor` marks affine models
    M = U x C*, whose homology carries one extra free rank at the trivial
    character and in integral covers."""
    presentation: Presentation
    char_table: tuple   # per generator: integer vector over the hyperplanes
    cstar_factor: bool
    arrangement: object = None

    def character(self, exponents, order):
        """Per-generator character from a per-hyperplane exponent vector.
        Table entries may be fractional (deck-group division); the totals
        must come out integral for admissible exponent vectors."""
        vals = []
        for row in self.char_table:
            num = sum(c * e for c, e in zip(row, exponents))
            if getattr(num, "denominator", 1) != 1:
                raise ValueError("character does not descend to this model")
            vals.append(int(num))
        return Character.build(order, vals)

    def source(self):
        return JumpSource.from_presentation(
            self.presentation,
            self.arrangement if not self.cstar_factor else None)


def sweep_model(arr) -> GroupModel:
    """Projectivized-complement model of a rational rank-3 arrangement: one
    generator per hyperplane, characters pass through unchanged."""
    pres = sweep_presentation(arr, projective=True)
    table = tuple(tuple(1 if j == i else 0 for j in range(arr.n))
                  for i in range(arr.n))
    return GroupModel(pres, table, cstar_factor=False, arrangement=arr)


def monomial_deleted_model(p) -> GroupModel:
    """Affine-complement model of the monomial arrangement minus {x = 0}.

    The p-th power map (x, y, z) -> (u, v, w) presents the complement of
    x y z (x^p - y^p)(x^p - z^p)(y^p - z^p) = 0 as the regular (Z_p)^3
    cover of the complement of u v w (u - v)(u - w)(v - w) = 0 classified
    by sending the three coordinate meridians to the standard generators.
    Rewriting by Reidemeister-Schreier, then killing the meridians of
    {x = 0} (each loop of the form t x_u^p t^{-1} lies in the kernel and
    maps to a meridian of x upstairs) gives the group of the deleted
    complement.  A character on the remaining hyperplanes must take a
    single value on each block of p conjugate hyperplanes; it evaluates on
    a kernel generator through its winding numbers downstairs, with the
    coordinate windings divided by p.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    from fractions import Fraction
    d6 = Arrangement.validate(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1),
         (1, -1, 0), (1, 0, -1), (0, 1, -1)],
        labels=["u", "v", "w", "u-v", "u-w", "v-w"])
    base = sweep_presentation(d6, projective=False)
    values = []
    for i in range(6):
        vec = [0, 0, 0]
        if i < 3:
            vec[i] = 1
        values.append(tuple(vec))
    data = reidemeister_schreier_abelian(base, (p, p, p), values)
    branch = []
    for coset in sorted(data.transversal):
        word = data.rewrite((1,) * p, start=coset)  # x_u^p at this coset
        if word:
            branch.append(word)
    pres = Presentation.build(
        data.presentation.ngens,
        list(data.presentation.relators) + branch)
    pres, alive, ab = simplify_presentation(pres, data.ab_vectors)
    # upstairs hyperplane order: y, z, x-z^j y, x-z^j z, y-z^j z (3p+2)
    table = []
    for vec in ab:
        a_u, a_v, a_w, a_uv, a_uw, a_vw = vec
        row = [Fraction(a_v, p), Fraction(a_w, p)]
        row += [Fraction(a_uv, p)] * p
        row += [Fraction(a_uw, p)] * p
        row += [Fraction(a_vw, p)] * p
        table.append(tuple(row))
    return GroupModel(pres, tuple(table), cstar_factor=True)


# ----------------------------------------------------------------------
# the multinet torsion pipeline
# ----------------------------------------------------------------------

def _cover_dims_and_charpoly(model, delta, prime):
    source = model.source()
    extra = 1 if model.cstar_factor else 0
    ctxp = field_context(prime, delta.order)
    cert = torsion_detect(source, delta, prime, q=1)
    cp = monodromy_charpoly(source, delta, ctxp, q=1)
    if extra:
        # remove the central C* factor: one unit of free rank at Phi_1
        mult = cp.as_dict()
        mult[1] -= extra
        cp = CharPoly.build(mult)
    return cert, cp, extra


def multinet_torsion_pipeline(arr, pm, p=None, model=None, r=None,
                              r_cap=30, integral_cap=5000):
    """End-to-end torsion certificate for the Milnor fiber of a deletion.

    Stages: delete the distinguished hyperplane and extract the pencil
    direction; pick the smallest admissible cover order r (no nontrivial
    complex character of the direction may jump); verify that every
    characteristic-p character does jump; lift the direction to
    multiplicities m' of weight N' prime to p; compare Milnor-fiber
    dimensions across characteristics; optionally confirm integrally.
    """
    net = pm.multinet
    mh = net.m[pm.hyperplane]
    if p is None:
        p = prime_factors(mh)[0]
    if mh % p != 0:
        raise ValueError(f"{p} does not divide the distinguished multiplicity {mh}")
    chain = [f"pointed multinet: H index {pm.hyperplane}, m_H = {mh}, p = {p}"]
    cert = deletion_pencil_certificate(arr, pm)
    deleted = cert.deleted
    chain.append(f"pencil direction e = {cert.direction}, translate order {cert.multiplier}")
    if model is None:
        model = sweep_model(deleted)
    source = model.source()
    extra = 1 if model.cstar_factor else 0

    def chi_mod(order):
        return model.character([e % order for e in cert.direction], order)

    ctx_for = lambda char, order: field_context(char, order)
    candidates = [r] if r is not None else [
        s for s in range(2, r_cap + 1) if s % p != 0]
    chosen = None
    for s in candidates:
        if s % p == 0:
            raise ValueError("p divides the requested cover order")
        chi = chi_mod(s)
        if not chi.is_surjective():
            continue
        ctx0 = ctx_for(0, s)
        if all(jump_depth(source, 1, chi.power(j), ctx0) == 0
               for j in range(1, s)):
            chosen = s
            break
    if chosen is None:
        raise ValueError(
            f"direction torus meets the complex jump locus for every r <= {r_cap}")
    r = chosen
    chi = chi_mod(r)
    ctxp = ctx_for(p, r)
    charp_jumps = [jump_depth(source, 1, chi.power(j), ctxp) for j in range(1, r)]
    chain.append(f"r = {r}: complex jumps all zero; char-{p} jumps {charp_jumps}")
    cover_cert = torsion_detect(source, chi, p, q=1)
    if cover_cert is None:
        raise ValueError(f"no characteristic-{p} jump at cover order {r}")

    chi_arr = Character.build(r, [e % r for e in cert.direction])
    mprime = find_multiplicities(deleted, chi_arr, p)
    nprime = sum(mprime)
    chain.append(f"multiplicities m' = {mprime}, N' = {nprime}")
    delta = model.character([x % nprime for x in mprime], nprime)
    fiber_cert, charpoly, _ = _cover_dims_and_charpoly(model, delta, p)
    bound = fiber_cert.bound if fiber_cert else 0
    if nprime % r == 0 and gcd(nprime // r, p) == 1:
        # the Milnor fiber dominates the r-fold cover with deck order
        # prime to p, so the transfer carries its torsion bound over
        bound = max(bound, cover_cert.bound)
        chain.append(f"transfer from the {r}-fold cover: bound >= {cover_cert.bound}")
    integral = None
    if nprime * model.presentation.ngens <= integral_cap:
        h1 = integral_h1_kernel(model.presentation, delta)
        if extra:
            h1 = replace(h1, rank=h1.rank - extra)
        integral = h1
        bound = max(bound, h1.p_torsion_rank(p))
        chain.append(f"integral H_1 of the Milnor fiber: {h1}")
    if fiber_cert is not None:
        dim0, dimp = fiber_cert.dim_char0, fiber_cert.dim_charp
    else:
        from .jumploci import cover_homology
        dim0 = cover_homology(source, delta, ctx_for(0, nprime))
        dimp = cover_homology(source, delta, ctx_for(p, nprime))
    return TorsionCertificate(
        prime=p, degree=1, bound=bound, chain=tuple(chain),
        dim_char0=dim0 - extra, dim_charp=dimp - extra,
        witnesses=fiber_cert.witnesses if fiber_cert else (),
        integral=integral, charpoly=charpoly)


# ----------------------------------------------------------------------
# polarization: torsion in higher degrees
# ----------------------------------------------------------------------

def _polarization_setup(aprime, mprime, model=None):
    book = polarize(aprime, mprime)
    if model is None:
        model = sweep_model(aprime)
    if model.cstar_factor:
        raise ValueError("polarization transport needs the projectivized group")
    nprime = sum(mprime)
    delta_b = [1] * nprime
    backbone, pencils = theta_star(book, delta_b)
    exponents = list(backbone)
    factors = [presentation_factor(model.source())]
    for h in range(aprime.n):
        if mprime[h] >= 2:
            exponents.extend(pencils[h])
            factors.append(pencil_factor(mprime[h]))
    chi = Character.build(nprime, exponents)
    return book, factors, chi


def polarized_milnor_delta_upoly(aprime, mprime, char, model=None) -> UPoly:
    """Delta(u, x) of the Milnor fiber of the polarization A'||m', through
    the product splitting of its complement into the backbone complement
    and one punctured line per pencil."""
    _, factors, chi = _polarization_setup(aprime, mprime, model)
    ctx = field_context(char, chi.order)
    return delta_product(factors, chi, ctx)


def charpoly_from_upoly(upoly, q) -> CharPoly:
    """Group the u_k counts at x^q into cyclotomic multiplicities."""
    from .exact import euler_phi
    mult = {}
    for k, c in upoly.coefficient(q).items():
        phi = euler_phi(k) if k > 1 else 1
        if c % phi != 0:
            raise AssertionError(f"u_{k} count {c} not divisible by phi({k})")
        if c:
            mult[k] = c // phi
    return CharPoly.build(mult)


def polarized_milnor_delta(aprime, mprime, char, q, model=None) -> CharPoly:
    """Characteristic polynomial of the degree-q monodromy of the Milnor
    fiber of the polarization."""
    if aprime.rank() != 3:
        raise ValueError("degree-2 completion needs a rank-3 backbone")
    if char and sum(mprime) % char == 0:
        raise ValueError("field characteristic divides N")
    return charpoly_from_upoly(
        polarized_milnor_delta_upoly(aprime, mprime, char, model), q)


def polarization_torsion(aprime, mprime, p, model=None) -> TorsionCertificate:
    """Torsion certificate in degree 1 + n_3 for the Milnor fiber of the
    polarization: the coefficient of x^(1+n_3) in the difference of the
    Delta polynomials over characteristic p and characteristic 0."""
    if any(x == 2 for x in mprime):
        raise ValueError("multiplicities equal to 2 break the pencil bound")
    book, factors, chi = _polarization_setup(aprime, mprime, model)
    degree = 1 + book.n3
    if p and chi.order % p == 0:
        raise ValueError("p divides N")
    d_p = delta_product(factors, chi, field_context(p, chi.order))
    d_0 = delta_product(factors, chi, field_context(0, chi.order))
    diff = d_p.sub(d_0)
    coeff = diff.coefficient(degree)
    assert all(c >= 0 for c in coeff.values())
    bound = sum(coeff.values())
    if bound <= 0:
        return None
    chain = (f"polarization of {len(mprime)} hyperplanes, N = {chi.order}, "
             f"n_3 = {book.n3}",
             f"Delta difference coefficient at x^{degree}: "
             f"{UPoly.build({degree: coeff})}")
    dim0 = d_0.coefficient(degree)
    dimp = d_p.coefficient(degree)
    return TorsionCertificate(
        prime=p, degree=degree, bound=bound, chain=chain,
        dim_char0=sum(dim0.values()), dim_charp=sum(dimp.values()),
        witnesses=tuple(sorted(coeff)))
