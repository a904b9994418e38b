import numpy as np
import pytest

from braces.abelian import (
    abelian_automorphisms,
    automorphism_count,
    coordinates_tuple,
    inverse_perm,
    make_group,
    perm_group_closed,
)
from braces.arith import is_prime, multiplicative_order, smallest_element_of_order, smallest_nonresidue
from braces.errors import InvalidArgument, PreconditionError
from braces.gl2 import Mat2, canonical_lambda, gl2_order_p_subgroups, hypothesis_violations, verify_gl2_lemma


# -- oracles ------------------------------------------------------------------


def test_make_group_examples():
    assert make_group([3]).order == 3
    assert make_group([9, 49]).invariant_factors == (441,)
    assert make_group([3, 21]).invariant_factors == (3, 21)
    assert make_group([3, 21]) == make_group([3, 3, 7])


def test_make_group_rejects_small_factor():
    with pytest.raises(InvalidArgument):
        make_group([1, 3])


@pytest.mark.parametrize("factors, count", [([9], 6), ([3, 3], 48), ([2], 1)])
def test_automorphism_counts(factors, count):
    aut = abelian_automorphisms(make_group(factors))
    assert len(aut) == count


def test_aut_z9_is_multiplication_by_units():
    aut = abelian_automorphisms(make_group([9]))
    assert sorted(int(r[1]) for r in aut) == [1, 2, 4, 5, 7, 8]


def test_canonical_constants():
    assert canonical_lambda(3, 7) == 2
    assert canonical_lambda(5, 11) == 3
    assert smallest_element_of_order(3, 49) == 18
    assert smallest_nonresidue(3) == 2 and smallest_nonresidue(5) == 2


@pytest.mark.parametrize("p, q, n", [(3, 7, 3), (5, 11, 4), (3, 13, 3)])
def test_gl2_lemma(p, q, n):
    assert len(gl2_order_p_subgroups(p, q)) == n
    rep = verify_gl2_lemma(p, q)
    assert rep.classes == n and rep.match


def test_gl2_reps_at_3_7():
    reps = [m.as_tuple() for m in gl2_order_p_subgroups(3, 7)]
    assert reps == [(1, 0, 0, 2), (2, 0, 0, 2), (2, 0, 0, 4)]


def test_hypothesis_violation_named():
    with pytest.raises(PreconditionError, match="p ∤ q−1"):
        gl2_order_p_subgroups(3, 5)
    assert hypothesis_violations(3, 7) == []
    assert "p | q+1" in hypothesis_violations(3, 5)


# -- properties ---------------------------------------------------------------


@pytest.mark.parametrize("factors", [[8], [2, 4], [2, 2, 2], [12], [2, 6], [25], [5, 5], [3, 9]])
def test_aut_group_closed_and_counted(factors):
    G = make_group(factors)
    aut = abelian_automorphisms(G)
    assert len(aut) == automorphism_count(G)
    assert perm_group_closed(aut)
    add = G.add_table
    for h in aut[:: max(1, len(aut) // 16)]:
        assert (h[add] == add[h[:, None], h[None, :]]).all()


def test_aut_against_brute_force():
    # every additive bijection of Z/2 x Z/4, by brute force over images of a basis
    G = make_group([2, 4])
    found = set()
    for a in range(G.order):
        for b in range(G.order):
            img = G.from_coords(G.coords[:, :1] * G.coords[a] + G.coords[:, 1:] * G.coords[b])
            if len(set(img.tolist())) == G.order and (img[G.add_table] == G.add_table[img[:, None], img[None, :]]).all():
                found.add(tuple(img.tolist()))
    assert found == {tuple(r) for r in abelian_automorphisms(G).tolist()}


def test_group_axioms_and_round_trip():
    G = make_group([3, 21])
    add, neg = G.add_table, G.neg_table
    ids = np.arange(G.order)
    assert (add[ids, neg] == 0).all()
    assert (add == add.T).all()
    a, b, c = np.indices((63, 63, 63)).reshape(3, -1)[:, ::97]
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    for i in range(G.order):
        assert G.encode(G.decode(i)) == i


def test_product_coordinates():
    G = make_group([7, 7, 3, 3])
    assert G.invariant_factors == (21, 21)
    x = coordinates_tuple(G, [7, 7, 3, 3], (1, 0, 0, 0))
    y = coordinates_tuple(G, [7, 7, 3, 3], (0, 0, 1, 0))
    assert G.add(x, y) == coordinates_tuple(G, [7, 7, 3, 3], (1, 0, 1, 0))


def test_mat2_order():
    m = Mat2.diag(2, 4, 7)
    assert m.order() == 3
    assert (m @ m.inverse()).as_tuple() == (1, 0, 0, 1)


def test_arith():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert multiplicative_order(18, 49) == 3
    assert (inverse_perm(np.array([2, 0, 1])) == [1, 2, 0]).all()
