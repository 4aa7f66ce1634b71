"""Multinets on arrangements, pointed multinets, the monomial family, and
the small-pencil certificate carried by a deletion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arrangement import Arrangement
from .exact import field_context, prime_factors


@dataclass(frozen=True)
class Multinet:
    parts: tuple        # k >= 3 tuples of hyperplane indices
    m: tuple            # positive multiplicities, one per hyperplane
    base_locus: tuple   # tuples of hyperplane indices (rank-2 flats)
    weight: int         # common class weight d
    n_table: tuple      # ((flat, n_X), ...)

    @property
    def k(self):
        return len(self.parts)

    def class_of(self, h):
        for i, part in enumerate(self.parts):
            if h in part:
                return i
        raise ValueError(f"hyperplane {h} in no class")


@dataclass(frozen=True)
class PointedMultinet:
    multinet: Multinet
    hyperplane: int


@dataclass(frozen=True)
class MultinetReport:
    valid: bool
    violations: tuple   # axiom failures, human-readable
    flags: tuple        # warnings (structure-theorem consistency, gcd)
    multinet: Multinet | None

    def __bool__(self):
        return self.valid


def _flat_lookup(arr):
    """pair of hyperplanes -> the (sorted) maximal rank-2 flat through it."""
    table = {}
    for flat in arr.rank2_flats():
        hs = flat.hyperplanes
        for a in range(len(hs)):
            for b in range(a + 1, len(hs)):
                table[(hs[a], hs[b])] = hs
    return table


def verify_multinet(arr, parts, m, base_locus=None) -> MultinetReport:
    """Check the multinet axioms: (1) equal class weights, (2) cross-class
    intersections lie in the base locus, (3) per-flat class weights n_X
    independent of the class, (4) each class connected through flats off
    the base locus.  When base_locus is omitted it is completed canonically
    as the set of all cross-class flats.

    Also flags the structure-theorem consistency conditions: more than one
    base-locus flat forces k in {3, 4}, and any multiplicity > 1 forces
    k = 3; and warns when gcd(m) > 1.
    """
    n = arr.n
    parts = tuple(tuple(sorted(part)) for part in parts)
    m = tuple(int(x) for x in m)
    if len(m) != n or any(x < 1 for x in m):
        raise ValueError("need one positive multiplicity per hyperplane")
    covered = sorted(h for part in parts for h in part)
    if covered != list(range(n)):
        raise ValueError("parts do not partition the hyperplanes")
    k = len(parts)
    if k < 3:
        raise ValueError("a multinet needs at least 3 classes")

    pairs = _flat_lookup(arr)
    cls = {}
    for i, part in enumerate(parts):
        for h in part:
            cls[h] = i

    cross_flats = sorted({pairs[(a, b)] for a in range(n) for b in range(a + 1, n)
                          if a < b and cls[a] != cls[b]})
    if base_locus is None:
        base_locus = cross_flats
    base_locus = tuple(sorted(tuple(sorted(f)) for f in base_locus))

    violations = []
    flags = []

    weights = [sum(m[h] for h in part) for part in parts]
    d = weights[0]
    if len(set(weights)) != 1:
        violations.append(f"(1) class weights differ: {weights}")

    for flat in cross_flats:
        if flat not in base_locus:
            violations.append(
                f"(2) cross-class flat {flat} missing from the base locus")

    n_table = []
    for flat in base_locus:
        per_class = [sum(m[h] for h in flat if cls[h] == i) for i in range(k)]
        if len(set(per_class)) != 1:
            violations.append(f"(3) flat {flat} has class weights {per_class}")
        n_table.append((flat, per_class[0]))

    base_set = set(base_locus)
    for i, part in enumerate(parts):
        if len(part) <= 1:
            continue
        reached = {part[0]}
        frontier = [part[0]]
        while frontier:
            a = frontier.pop()
            for b in part:
                if b not in reached and pairs[tuple(sorted((a, b)))] not in base_set:
                    reached.add(b)
                    frontier.append(b)
        if len(reached) != len(part):
            violations.append(f"(4) class {i} disconnected off the base locus")

    if len(base_locus) > 1 and k not in (3, 4):
        flags.append(f"|base locus| > 1 but k = {k} (expected 3 or 4)")
    if any(x > 1 for x in m) and k != 3:
        flags.append(f"some multiplicity > 1 but k = {k} (expected 3)")
    g = 0
    for x in m:
        g = gcd(g, x)
    if g != 1:
        flags.append(f"gcd of multiplicities is {g}, not 1")

    valid = not violations
    net = None
    if valid:
        net = Multinet(parts, m, base_locus, d, tuple(n_table))
    return MultinetReport(valid, tuple(violations), tuple(flags), net)


def verify_pointed(arr, net, h) -> PointedMultinet:
    """Pointed-multinet check: m_H > 1 and m_H divides n_X at every
    base-locus flat through H."""
    if not 0 <= h < arr.n:
        raise ValueError("hyperplane index out of range")
    mh = net.m[h]
    if mh <= 1:
        raise ValueError(f"distinguished hyperplane must have m > 1, got {mh}")
    bad = [flat for flat, nx in net.n_table if h in flat and nx % mh != 0]
    if bad:
        raise ValueError(f"m_H = {mh} does not divide n_X at flats {bad}")
    return PointedMultinet(net, h)


# ----------------------------------------------------------------------
# the monomial family
# ----------------------------------------------------------------------

def monomial_multinet(p):
    """The arrangement of x, y, z and the linear factors of x^p - y^p,
    x^p - z^p, y^p - z^p over Q(zeta_p), with the weight-2p multinet whose
    classes come from Q1 = x^p (y^p - z^p), Q2 = y^p (x^p - z^p),
    Q3 = z^p (x^p - y^p), pointed at {x = 0}."""
    if p < 2:
        raise ValueError("need p >= 2")
    ctx = field_context(0, p)
    one, zero = ctx.one, ctx.zero

    def neg_zeta(j):
        return ctx.neg(ctx.zeta_pow(j))

    normals = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    labels = ["x", "y", "z"]
    for (a, b), name in (((0, 1), "x-z^j*y"), ((0, 2), "x-z^j*z"),
                         ((1, 2), "y-z^j*z")):
        for j in range(p):
            vec = [zero, zero, zero]
            vec[a] = one
            vec[b] = neg_zeta(j)
            normals.append(tuple(vec))
            labels.append(name.replace("j", str(j)))
    arr = Arrangement.validate(normals, labels=labels, ctx=ctx, dim=3)
    # indices: 0 x, 1 y, 2 z, 3..3+p-1 x-y block, then x-z, then y-z
    xy = tuple(range(3, 3 + p))
    xz = tuple(range(3 + p, 3 + 2 * p))
    yz = tuple(range(3 + 2 * p, 3 + 3 * p))
    parts = ((0,) + yz, (1,) + xz, (2,) + xy)
    m = (p, p, p) + (1,) * (3 * p)
    report = verify_multinet(arr, parts, m)
    assert report.valid, report.violations
    pm = verify_pointed(arr, report.multinet, 0)
    return arr, pm


# ----------------------------------------------------------------------
# deletion and the small-pencil certificate
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SmallPencilCert:
    deleted: Arrangement
    multiplier: int          # m_H, the multiple-fiber multiplicity
    primes: tuple            # prime divisors of m_H
    direction: tuple         # exponent vector e on the deleted arrangement
    class_polynomials: tuple # per remaining class: ((index in deleted, mult), ...)

    def direction_character_mod(self, r):
        from .fpgroups import Character
        return Character.build(r, self.direction)


def deletion_pencil_certificate(arr, pm) -> SmallPencilCert:
    """Delete the distinguished hyperplane H; the two remaining multinet
    classes bound a pencil on the deleted complement, whose direction in
    the character torus is e_K = mult_K(Q2) - mult_K(Q3), translated by a
    character of order m_H."""
    net = pm.multinet
    if net.k != 3:
        raise ValueError("the small-pencil construction needs k = 3")
    h = pm.hyperplane
    own = net.class_of(h)
    others = [i for i in range(3) if i != own]
    deleted = arr.delete(h)

    def new_index(old):
        return old if old < h else old - 1

    mults = []
    for i in others:
        mults.append(tuple(sorted((new_index(k), net.m[k])
                                  for k in net.parts[i] if k != h)))
    q2, q3 = dict(mults[0]), dict(mults[1])
    e = tuple(q2.get(j, 0) - q3.get(j, 0) for j in range(deleted.n))
    assert sum(e) == 0
    mh = net.m[h]
    return SmallPencilCert(deleted, mh, tuple(prime_factors(mh)), e,
                           tuple(mults))


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

def multinet_to_dict(net, pointed=None):
    out = {"parts": [list(p) for p in net.parts],
           "m": list(net.m),
           "base_locus": [list(f) for f in net.base_locus]}
    if pointed is not None:
        out["pointed"] = pointed
    return out


def multinet_input_from_dict(data):
    """(parts, m, base_locus, pointed) ready for verify_multinet."""
    return ([tuple(p) for p in data["parts"]],
            tuple(data["m"]),
            [tuple(f) for f in data["base_locus"]] if "base_locus" in data else None,
            data.get("pointed"))
