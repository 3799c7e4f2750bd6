from math import gcd

import numpy as np
import pytest
from oracles import CORPUS_NAMES, corpus_group, naive_derived

from mlaw import (
    OrderLimitError,
    abelian_invariants,
    alternating,
    are_isomorphic,
    commutator_hom,
    cyclic,
    cyclic_product,
    dihedral,
    exterior_square,
    quaternion,
    sl23,
    symmetric,
    tensor_square,
)
from mlaw.wedge import WedgeInvariantError, WedgeSquare, check_square, square_presentation


def _inv(G):
    return list(abelian_invariants(G).divisors)


@pytest.mark.parametrize("n", range(3, 9))
def test_exterior_dihedral_is_cyclic_of_order_n(n):
    ws = exterior_square(dihedral(n))
    assert ws.W.is_abelian and _inv(ws.W) == [n]


def test_exterior_examples():
    assert are_isomorphic(exterior_square(alternating(4)).W, quaternion(2))
    assert _inv(exterior_square(cyclic_product(4, 6)).W) == [2]
    for n in (1, 2, 5, 8, 12):
        assert exterior_square(cyclic(n)).W.order == 1
    ws = exterior_square(symmetric(4))
    assert ws.W.order == 24 and are_isomorphic(ws.W, sl23())


def test_tensor_examples():
    # D_3: Z_2 x Z_n with n = 3 odd, a cyclic group of order 6
    assert _inv(tensor_square(dihedral(3)).W) == [6]
    assert _inv(tensor_square(dihedral(4)).W) == [2, 2, 2, 4]
    assert tensor_square(cyclic(1)).W.order == 1


@pytest.mark.parametrize("n", [3, 5, 7])
def test_tensor_dihedral_odd(n):
    assert _inv(tensor_square(dihedral(n)).W) == _inv(cyclic_product(2, n))


@pytest.mark.parametrize("n", [4, 6])
def test_tensor_dihedral_even(n):
    W = tensor_square(dihedral(n)).W
    assert W.is_abelian
    assert _inv(W) == sorted([2, 2, 2, n])


def test_schur_multiplier_examples():
    assert commutator_hom(exterior_square(dihedral(3))).multiplier.order == 1
    assert list(commutator_hom(exterior_square(dihedral(4))).invariants.divisors) == [2]
    for n in range(2, 6):
        assert commutator_hom(exterior_square(quaternion(n), max_order=24)).multiplier.order == 1
    assert list(commutator_hom(exterior_square(symmetric(4))).invariants.divisors) == [2]
    assert commutator_hom(exterior_square(symmetric(3))).multiplier.order == 1


@pytest.mark.parametrize("m,n", [(2, 2), (2, 4), (3, 6), (4, 6), (6, 6)])
def test_multiplier_of_abelian_products(m, n):
    ws = exterior_square(cyclic_product(m, n), max_order=36)
    data = commutator_hom(ws)
    assert list(data.invariants.divisors) == ([gcd(m, n)] if gcd(m, n) > 1 else [])
    assert ws.W.is_abelian and data.multiplier.order == ws.W.order


# the order-16 direct products have tensor squares of order 1024 and 2048,
# which take tens of seconds; their exterior squares are still checked
_SLOW_TENSOR = {"Z2xD4", "Z2xQ2"}


@pytest.mark.parametrize("name", [n for n in CORPUS_NAMES if corpus_group(n).order <= 16])
def test_square_invariants_on_corpus(name):
    G = corpus_group(name)
    ext = exterior_square(G)
    check_square(ext)
    data = commutator_hom(ext)
    assert ext.W.order == data.multiplier.order * len(naive_derived(G))
    if name not in _SLOW_TENSOR:
        ten = tensor_square(G)
        check_square(ten)
        assert ten.W.order % ext.W.order == 0
    # chi(a ^ b) = [a, b]
    rows, inv = G.table.tolist(), G.inverse.tolist()
    K = [[rows[rows[x][y]][rows[inv[x]][inv[y]]] for y in range(G.order)] for x in range(G.order)]
    assert data.chi.images[ext.pair_map].tolist() == K
    assert len(ext.W.closure(np.unique(ext.pair_map).tolist())) == ext.W.order


def test_action_of_identity_and_abelian_groups():
    ws = exterior_square(dihedral(5))
    assert np.array_equal(ws.action[0], np.arange(ws.W.order))
    ws = tensor_square(cyclic_product(2, 4))
    assert (ws.action == np.arange(ws.W.order)[None, :]).all()


def test_dihedral3_action_inverts_a_wedge_b():
    G = dihedral(3)
    a, b = G.generators
    ws = exterior_square(G)
    w = ws.pair(a, b)
    assert ws.W.order == 3 and w != 0
    assert ws.action[a, w] == ws.W.inv(w)
    # trace the relations by hand: ^a a = a and ^a b = b^-1, so ^a(a ^ b) = a ^ b^-1
    assert ws.pair(G.conj[a, a], G.conj[a, b]) == ws.pair(a, G.inv(b))
    assert ws.pair(a, G.inv(b)) == ws.W.inv(w)


def test_action_is_compatible_with_products():
    ws = exterior_square(symmetric(4))
    act = ws.action
    G = ws.base
    for x in range(0, G.order, 5):
        for y in range(0, G.order, 7):
            assert np.array_equal(act[G.mul(x, y)], act[x][act[y]])


def test_order_bound():
    with pytest.raises(OrderLimitError):
        exterior_square(dihedral(13))
    assert exterior_square(dihedral(13), max_order=26).W.order == 13


def test_presentation_shape():
    G = dihedral(3)
    p = square_presentation(G, "tensor")
    assert len(p.generators) == 36
    assert len(p.relators) == 2 * 6**3
    q = square_presentation(G, "exterior")
    assert len(q.relators) == 2 * 6**3 + 6 + 30


def test_check_square_catches_corruption():
    ws = exterior_square(dihedral(4))
    bad = ws.pair_map.copy()
    a, b = ws.base.generators
    bad[a, b] = ws.W.inv(int(bad[a, b]))
    broken = WedgeSquare(ws.base, ws.W, ws.kind, bad, ws.action)
    with pytest.raises(WedgeInvariantError):
        check_square(broken)
