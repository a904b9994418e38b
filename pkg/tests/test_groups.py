import numpy as np

from braces.abelian import make_group
from braces.groups import (
    abelian_invariants,
    center,
    derived_subgroup,
    element_orders,
    group_fingerprint,
    group_isomorphism,
    groups_isomorphic,
)


def dihedral(n):
    # (r, s) -> index r + n s; (r1, s1)(r2, s2) = (r1 + (-1)^s1 r2, s1 + s2)
    idx = np.arange(2 * n)
    r, s = idx % n, idx // n
    rr = (r[:, None] + np.where(s[:, None] == 1, -1, 1) * r[None, :]) % n
    ss = (s[:, None] + s[None, :]) % 2
    return rr + n * ss


def test_dihedral_invariants():
    D = dihedral(6)
    assert len(center(D)) == 2
    assert len(derived_subgroup(D)) == 3
    assert sorted(np.bincount(element_orders(D)).nonzero()[0].tolist()) == [1, 2, 3, 6]


def test_abelian_invariants_of_cyclic_products():
    G = make_group([2, 6])
    assert abelian_invariants(G.add_table) == (2, 6)
    assert group_fingerprint(make_group([9]).add_table).is_abelian


def test_isomorphism_witness():
    D = dihedral(5)
    perm = np.random.default_rng(1).permutation(10)
    perm = np.concatenate([[0], perm[perm != 0]])  # keep identity at 0
    inv = np.argsort(perm)
    E = perm[D[inv[:, None], inv[None, :]]]
    f = group_isomorphism(D, E)
    assert f is not None
    assert (f[D] == E[f[:, None], f[None, :]]).all()
    assert not groups_isomorphic(D, make_group([10]).add_table)


def test_fingerprint_distinguishes_q8_d4():
    # quaternion group via unit quaternions ±1, ±i, ±j, ±k
    names = [(s, u) for s in (1, -1) for u in "1ijk"]
    table = {("1", x): (1, x) for x in "1ijk"}
    table.update({(x, "1"): (1, x) for x in "1ijk"})
    table.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1")})
    table.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j")})
    table.update({("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    Q = np.zeros((8, 8), dtype=int)
    for a, (s1, u1) in enumerate(names):
        for b, (s2, u2) in enumerate(names):
            s, u = table[(u1, u2)]
            Q[a, b] = names.index((s * s1 * s2, u))
    assert group_fingerprint(Q) != group_fingerprint(dihedral(4))
    assert not groups_isomorphic(Q, dihedral(4))
