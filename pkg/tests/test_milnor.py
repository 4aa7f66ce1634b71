"""Milnor fiber characters, multiplicity search, group models."""

import pytest

from milnortor.arrangement import Arrangement
from milnortor.fpgroups import Character
from milnortor.milnor import (charpoly_from_upoly, find_multiplicities,
                              milnor_character, monomial_deleted_model,
                              polarized_milnor_delta, recognize_milnor_cover,
                              sweep_model)
from milnortor.multinet import monomial_multinet

BRAID = Arrangement.validate([(1, -1, 0), (1, 1, 0), (1, 0, -1),
                              (1, 0, 1), (0, 1, -1), (0, 1, 1)])
DELETED_B3 = Arrangement.validate(
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 1, 0),
     (1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1)]).delete(2)


def test_milnor_character_braid():
    spec = milnor_character(BRAID, (1,) * 6)
    assert spec.N == 6
    assert spec.delta.exponents == (1,) * 6
    assert not spec.gcd_warning


def test_milnor_character_gcd_warning():
    assert milnor_character(BRAID, (2,) * 6).gcd_warning


def test_recognize_roundtrip():
    for arr, m in ((BRAID, (1,) * 6),
                   (DELETED_B3, (2, 1, 3, 3, 2, 2, 1, 1)),
                   (DELETED_B3, (8, 1, 3, 3, 5, 5, 1, 1))):
        spec = milnor_character(arr, m)
        assert recognize_milnor_cover(arr, spec.delta) == m


def test_recognize_rejects_nonprojective():
    with pytest.raises(ValueError):
        recognize_milnor_cover(BRAID, Character.build(4, (1,) * 6))


def test_find_multiplicities_deleted_b3():
    chi3 = Character.build(3, (2, 1, 0, 0, 2, 2, 1, 1))
    assert find_multiplicities(DELETED_B3, chi3, 2) == \
        (2, 1, 3, 3, 2, 2, 1, 1)
    assert find_multiplicities(DELETED_B3, chi3, 2, forbid_two=True) == \
        (8, 1, 3, 3, 5, 5, 1, 1)


def test_find_multiplicities_congruence_and_coprimality():
    chi3 = Character.build(3, (2, 1, 0, 0, 2, 2, 1, 1))
    for forbid in (False, True):
        m = find_multiplicities(DELETED_B3, chi3, 2, forbid_two=forbid)
        N = sum(m)
        assert N % 2 == 1
        # m is a unit multiple of chi mod 3
        for k in (1, 2):
            if all((x - k * e) % 3 == 0
                   for x, e in zip(m, chi3.exponents)):
                break
        else:
            raise AssertionError("not a unit multiple of the character")
        if forbid:
            assert 2 not in m


def test_find_multiplicities_rejects_p_dividing_r():
    chi = Character.build(3, (1, 2, 0, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        find_multiplicities(DELETED_B3, chi, 3)


def test_sweep_model_character_passthrough():
    model = sweep_model(BRAID)
    chi = model.character((1, 2, 3, 4, 5, 0), 6)
    assert chi.exponents == (1, 2, 3, 4, 5, 0)
    assert not model.cstar_factor


def test_monomial_model_shape():
    model = monomial_deleted_model(3)
    assert model.cstar_factor
    pres = model.presentation
    assert str(pres.abelianization()) == f"Z^{pres.ngens}"
    # characters are transported through the branched-cover bookkeeping:
    # the all-ones downstairs direction stays surjective away from p
    arr, pm = monomial_multinet(3)
    from milnortor.multinet import deletion_pencil_certificate
    e = deletion_pencil_certificate(arr, pm).direction
    chi = model.character([x % 7 for x in e], 7)
    assert chi.is_surjective()


def test_monomial_model_rejects_fractional_character():
    model = monomial_deleted_model(2)
    nhyps = 3 * 2 + 2  # deleted downstairs arrangement
    # some exponent vector that is not constant on a pencil block has no
    # lift (the deck-group bookkeeping divides block windings by p)
    raised = 0
    for i in range(nhyps):
        e = [0] * nhyps
        e[i] = 1
        try:
            model.character(e, 5)
        except ValueError:
            raised += 1
    assert raised > 0


def test_charpoly_from_upoly():
    from milnortor.jumploci import UPoly
    u = UPoly.build({0: {1: 1}, 1: {1: 5, 3: 2}})
    cp = charpoly_from_upoly(u, 1)
    assert str(cp) == "(t - 1)^5(t^2 + t + 1)"


def test_polarized_delta_braid_reduced():
    # m = 1 everywhere: the polarization is the arrangement itself
    cp = polarized_milnor_delta(BRAID, (1,) * 6, 0, 1)
    assert str(cp) == "(t - 1)^5(t^2 + t + 1)"
