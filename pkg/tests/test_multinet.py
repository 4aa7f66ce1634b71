"""Multinet axioms, pointedness, pencil certificates, monomial family."""

import pytest

from milnortor.arrangement import Arrangement
from milnortor.multinet import (deletion_pencil_certificate, monomial_multinet,
                                multinet_input_from_dict, multinet_to_dict,
                                verify_multinet, verify_pointed)

B3 = Arrangement.validate(
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 1, 0),
     (1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1)],
    labels=["x", "y", "z", "x-y", "x+y", "x-z", "x+z", "y-z", "y+z"])
B3_PARTS = [(2, 3, 4), (1, 5, 6), (0, 7, 8)]
B3_M = (2, 2, 2, 1, 1, 1, 1, 1, 1)


def test_b3_multinet_valid():
    rep = verify_multinet(B3, B3_PARTS, B3_M)
    assert rep.valid and not rep.violations and not rep.flags
    assert rep.multinet.k == 3
    assert rep.multinet.weight == 4
    # base locus: the three coordinate quadruple points and four triples
    assert len(rep.multinet.base_locus) == 7


def test_weight_balance_violation():
    rep = verify_multinet(B3, B3_PARTS, (2, 2, 1, 1, 1, 1, 1, 1, 1))
    assert not rep.valid
    assert any("weight" in v for v in rep.violations)


def test_cross_flat_violation():
    # moving a hyperplane into the wrong class breaks the flat axioms
    rep = verify_multinet(B3, [(2, 3, 4), (1, 5, 0), (6, 7, 8)], B3_M)
    assert not rep.valid


def test_pointed_b3():
    rep = verify_multinet(B3, B3_PARTS, B3_M)
    pm = verify_pointed(B3, rep.multinet, 2)
    assert pm.hyperplane == 2
    with pytest.raises(ValueError):
        verify_pointed(B3, rep.multinet, 3)  # m_H = 1


def test_pencil_certificate_b3():
    rep = verify_multinet(B3, B3_PARTS, B3_M)
    pm = verify_pointed(B3, rep.multinet, 2)
    cert = deletion_pencil_certificate(B3, pm)
    assert cert.multiplier == 2
    e = cert.direction
    # the pencil direction is only defined up to sign
    assert e in ((2, -2, 0, 0, -1, -1, 1, 1), (-2, 2, 0, 0, 1, 1, -1, -1))
    assert sum(e) == 0
    assert cert.deleted.n == 8


@pytest.mark.parametrize("p", [2, 3, 5])
def test_monomial_multinet(p):
    arr, pm = monomial_multinet(p)
    assert arr.n == 3 * p + 3
    net = pm.multinet
    assert net.k == 3
    assert net.m[pm.hyperplane] == p
    assert net.weight == 2 * p
    cert = deletion_pencil_certificate(arr, pm)
    assert sum(cert.direction) == 0
    assert cert.multiplier == p
    # blocks: +-p on the surviving coordinates, then -1s, +1s, 0s
    d = cert.direction
    assert (d[0], d[1]) == (p, -p)
    assert set(d[2:2 + p]) == {-1}
    assert set(d[2 + p:2 + 2 * p]) == {1}
    assert set(d[2 + 2 * p:]) == {0}


def test_monomial_rejects_bad_p():
    with pytest.raises(ValueError):
        monomial_multinet(1)


def test_multinet_dict_roundtrip():
    rep = verify_multinet(B3, B3_PARTS, B3_M)
    data = multinet_to_dict(rep.multinet, pointed=2)
    parts, m, base, pointed = multinet_input_from_dict(data)
    rep2 = verify_multinet(B3, parts, m, base)
    assert rep2.valid and pointed == 2
    assert rep2.multinet.base_locus == rep.multinet.base_locus


def test_k4_pencil_multinet_is_unflagged():
    # a (4,1)-net on a pencil: one base flat, reduced, so nothing to flag
    arr = Arrangement.validate([(1, 0), (1, 1), (1, 2), (0, 1)])
    rep = verify_multinet(arr, [(0,), (1,), (2,), (3,)], (1, 1, 1, 1))
    assert rep.valid and rep.flags == ()


def test_flag_on_nonreduced_k4():
    # k = 4 with a multiplicity > 1 violates the structure expectation
    arr = Arrangement.validate([(1, 0), (1, 1), (1, 2), (0, 1)])
    rep = verify_multinet(arr, [(0,), (1,), (2,), (3,)], (2, 2, 2, 2))
    if rep.valid:
        assert any("k = 4" in f or "gcd" in f for f in rep.flags)
