from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from stabwalls.lattice import (LatticeError, LatticeModel, P1xP1, P2, hodge_square_bound, inertia,
                               is_ample_numerical, pairing, preset)

small = st.integers(-20, 20)


@given(st.tuples(small, small), st.tuples(small, small))
def test_pairing_symmetric_and_bilinear(a, b):
    assert pairing(P1xP1, a, b) == pairing(P1xP1, b, a)
    double = tuple(2 * x for x in a)
    assert pairing(P1xP1, double, b) == 2 * pairing(P1xP1, a, b)


def test_preset_values():
    assert P2.pair((1,), (1,)) == 1
    assert P1xP1.pair((1, 1), (1, 1)) == 2
    assert P1xP1.pair((1, 0), (0, 1)) == 1
    assert preset("P2") is P2
    with pytest.raises(LatticeError):
        preset("K3")


def test_inertia_handles_zero_diagonal():
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[1, 0, 0], [0, -1, 0], [0, 0, 0]]) == (1, 1, 1)


@pytest.mark.parametrize("gram", [
    ((1, 0), (0, 1)),          # positive definite
    ((1, 0), (0, 0)),          # degenerate
    ((1, 2), (3, 1)),          # not symmetric
    ((1, 0),),                 # not square
])
def test_rejects_bad_gram(gram):
    with pytest.raises(LatticeError):
        LatticeModel(gram, (1, 0))


def test_rejects_bad_reference_class():
    with pytest.raises(LatticeError):
        LatticeModel(((0, 1), (1, 0)), (1, -1))
    with pytest.raises(LatticeError):
        P2.pair((1, 0), (1,))


def test_ampleness_proxy():
    assert is_ample_numerical(P1xP1, (2, 1))
    assert not is_ample_numerical(P1xP1, (-1, -1))   # wrong cone component
    assert not is_ample_numerical(P1xP1, (1, 0))     # boundary, square 0
    assert not is_ample_numerical(P2, (-1,))


def test_hodge_bound_contract():
    assert hodge_square_bound(P1xP1, (1, 1), -1, 2) == 2
    with pytest.raises(ValueError):
        hodge_square_bound(P1xP1, (1, 1), 2, 1)
    with pytest.raises(ValueError):
        hodge_square_bound(P1xP1, (1, -1), 0, 1)


@given(st.tuples(small, small), st.tuples(st.integers(1, 9), st.integers(1, 9)))
def test_hodge_index_on_p1xp1(alpha, w):
    d = P1xP1.pair(alpha, w)
    assert P1xP1.square(alpha) <= hodge_square_bound(P1xP1, w, d, d)
