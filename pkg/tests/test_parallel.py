"""Parallel connection, polarization, homology plumbing maps."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnortor.arrangement import Arrangement
from milnortor.parallel import (PointedArrangement, epsilon_class,
                                is_unimodular, parallel_connect,
                                pencil_arrangement, plugin_h1,
                                plugin_h1_projective_matrix, polarize,
                                theta_star)

BRAID = Arrangement.validate([(1, -1, 0), (1, 1, 0), (1, 0, -1),
                              (1, 0, 1), (0, 1, -1), (0, 1, 1)])
DELETED_B3 = Arrangement.validate(
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 1, 0),
     (1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1)]).delete(2)


# ----------------------------------------------------------------------
# pencils and parallel connection
# ----------------------------------------------------------------------

def test_pencil_arrangement_counts():
    for m in (2, 3, 5):
        arr = pencil_arrangement(m).arrangement
        assert arr.n == m and arr.rank() == 2


def test_pencil_unit():
    # Pl_1 is the operad unit: connecting it changes nothing
    pc = parallel_connect(PointedArrangement.build(BRAID, 0), 0,
                          pencil_arrangement(1))
    assert pc.arrangement.normals == BRAID.normals


def test_parallel_connect_counts():
    pc = parallel_connect(PointedArrangement.build(BRAID, 0), 0,
                          pencil_arrangement(3))
    assert pc.arrangement.n == 6 + 3 - 1
    assert pc.arrangement.rank() == 3 + 2 - 1


def test_polarize_counts_b3():
    m = (8, 1, 3, 3, 5, 5, 1, 1)
    book = polarize(DELETED_B3, m)
    arr = book.result
    assert arr.n == sum(m) == 27
    assert arr.rank() == 8
    assert book.n3 == 5
    assert book.n2 == arr.rank() - DELETED_B3.rank()


def test_polarize_identity_when_reduced():
    book = polarize(BRAID, (1,) * 6)
    assert book.result.normals == BRAID.normals
    assert book.n2 == book.n3 == 0


# ----------------------------------------------------------------------
# H1 plumbing
# ----------------------------------------------------------------------

def test_plugin_h1_shapes():
    v1 = [1, 2, 3]
    v2 = [10, 20, 30]
    out = plugin_h1(v1, v2, 1)
    assert len(out) == len(v1) + len(v2) - 1
    assert out[:3] == [1 + 10, 2 + 10, 3 + 10]
    assert out[3:] == [20 + 2, 30 + 2]


def test_plugin_h1_projective_unimodular_examples():
    for n1, n2, x in ((3, 2, 0), (4, 3, 2), (6, 4, 5), (2, 2, 1)):
        mat = plugin_h1_projective_matrix(n1, n2, x)
        assert is_unimodular(mat), (n1, n2, x)


@given(st.integers(min_value=2, max_value=7), st.integers(min_value=2, max_value=7),
       st.integers(min_value=0))
@settings(max_examples=120, deadline=None)
def test_plugin_h1_unimodularity_property(n1, n2, xraw):
    mat = plugin_h1_projective_matrix(n1, n2, xraw % n1)
    assert is_unimodular(mat)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=2, max_value=5),
       st.integers(min_value=2, max_value=5), st.integers(min_value=0),
       st.integers(min_value=0), st.data())
@settings(max_examples=120, deadline=None)
def test_plugin_h1_associativity(n1, n2, n3, x1raw, x2raw, data):
    """Plugging P3 into (P1 o_x P2) agrees with plugging stepwise in the
    other order when the slots are disjoint (operad associativity)."""
    x1 = x1raw % n1
    v1 = data.draw(st.lists(st.integers(-5, 5), min_size=n1, max_size=n1))
    v2 = data.draw(st.lists(st.integers(-5, 5), min_size=n2, max_size=n2))
    v3 = data.draw(st.lists(st.integers(-5, 5), min_size=n3, max_size=n3))
    # nested composition: plug v2 at slot x1 of v1, then v3 at a slot of v2
    x2 = x2raw % (n2 - 1) + 1  # a leaf slot of the second block
    inner = plugin_h1(v2, v3, x2)
    left = plugin_h1(v1, inner, x1)
    outer = plugin_h1(v1, v2, x1)
    # position of v2's slot x2 inside the outer vector
    right = plugin_h1(outer, v3, n1 + x2 - 1)
    assert left == right


# ----------------------------------------------------------------------
# theta_star transport
# ----------------------------------------------------------------------

def _pl4_book():
    pl4 = Arrangement.validate([(1, 0), (1, 1), (1, 2), (0, 1)])
    return polarize(pl4, (3, 2, 1, 3))


def test_theta_star_pl4_all_ones():
    book = _pl4_book()
    w = (1,) * 9  # all-ones class on the 9 polarized hyperplanes
    backbone, pencils = theta_star(book, w)
    assert backbone == (-6, 2, 1, 3)
    assert pencils == {0: (-2, 1, 1), 1: (-1, 1), 2: (0,), 3: (-2, 1, 1)}


def test_theta_star_blocks_sum_to_zero():
    book = _pl4_book()
    backbone, pencils = theta_star(book, (2, 0, 1, 6, 2, 1, 3, 2, 1))
    assert sum(backbone) == 0
    for block in pencils.values():
        assert sum(block) == 0


def test_theta_star_rejects_nonprojective():
    book = _pl4_book()
    with pytest.raises(ValueError):
        theta_star(book, (1,) + (0,) * 8)  # sum must vanish mod N
    with pytest.raises(ValueError):
        theta_star(book, (1, 0, 0, 0))     # wrong length


def test_epsilon_class():
    assert epsilon_class(3) == (-2, 1, 1)
    assert epsilon_class(2) == (-1, 1)
    assert epsilon_class(1) == (0,)
