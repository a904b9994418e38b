import itertools

import numpy as np
import pytest

from braces.abelian import abelian_automorphisms, make_group
from braces.core import make_trivial_brace, verify_brace
from braces.engine import (
    TauMorphism,
    classify_mn,
    classify_pair,
    coprime_identity_holds,
    embeddings,
    enumerate_taus,
    semidirect_brace,
    tau_classes,
)
from braces.errors import PreconditionError
from braces.iso import brace_automorphisms, brace_isomorphic


def cyclic_aut_subgroup(n, order):
    """Multiplications by the units of Z/n of order dividing `order`."""
    units = [k for k in range(1, n) if np.gcd(k, n) == 1 and pow(k, order, n) == 1]
    return np.array([(k * np.arange(n)) % n for k in sorted(units)])


# -- oracles ------------------------------------------------------------------


def test_semidirect_example(seeds7, seeds3):
    B1, B2 = seeds7[0].brace, seeds3[0].brace
    aut = seeds7[0].automorphisms
    rows = {int(r[1]): i for i, r in enumerate(aut)}
    images = np.array([rows[pow(18, b, 49)] for b in range(9)])
    tau = TauMorphism(B2, aut, images)
    B = semidirect_brace(B1, B2, tau)
    to_g = B.additive.product_map([49, 9])
    x = to_g[1 + 49 * 1]
    assert B.mul[x, x] == to_g[19 + 49 * 2]
    assert B.size == 441 and verify_brace(B)


def test_trivial_tau_gives_direct_product(seeds7, seeds3):
    B1, B2 = seeds7[1].brace, seeds3[3].brace
    aut = seeds7[1].automorphisms
    ident = int(np.nonzero((aut == np.arange(49)).all(axis=1))[0][0])
    B = semidirect_brace(B1, B2, TauMorphism(B2, aut, np.full(9, ident)))
    to_g = B.additive.product_map(B.meta["factors"])
    a, b = np.indices((49, 9)).reshape(2, -1)
    x = to_g[a + 49 * b]
    y = to_g[(a * 5) % 49 + 49 * ((b + 4) % 9)]
    expect = to_g[B1.mul[a, (a * 5) % 49] + 49 * B2.mul[b, (b + 4) % 9]]
    assert (B.mul[x, y] == expect).all()


def test_enumerate_taus_examples(seeds3):
    Z49 = make_group([49])
    aut49 = abelian_automorphisms(Z49)
    assert len(aut49) == 42
    assert len(enumerate_taus(seeds3[0].brace, aut49)) == 3
    assert len(enumerate_taus(seeds3[2].brace, cyclic_aut_subgroup(7, 3))) == 9
    assert len(enumerate_taus(seeds3[3].brace, np.arange(49)[None, :])) == 1


def test_tau_class_examples(seeds7, seeds3):
    aut1 = seeds7[0].automorphisms
    taus = enumerate_taus(seeds3[0].brace, aut1)
    assert tau_classes(taus, aut1, seeds3[0].automorphisms).total == 2
    taus = enumerate_taus(seeds3[1].brace, aut1)
    assert tau_classes(taus, aut1, seeds3[1].automorphisms).total == 3
    ident = np.arange(49)[None, :]
    assert tau_classes(taus, ident, np.arange(9)[None, :]).total == len(taus)


def test_classify_restricted_pair(seeds7, seeds3):
    res = classify_pair(seeds7[0].brace, seeds3[0].brace)
    assert res.total == 2
    assert brace_isomorphic(res.classes[0][1], make_trivial_brace(make_group([441])))


def test_classify_single_trivial():
    B1 = make_trivial_brace(make_group([2]))
    B2 = make_trivial_brace(make_group([3]))
    out = classify_mn([B1], [B2])
    assert len(out) == 1 and out[0].is_trivial()


def test_classify_preconditions(seeds3):
    with pytest.raises(PreconditionError, match="gcd"):
        classify_mn(seeds3, seeds3)
    with pytest.raises(PreconditionError):
        classify_mn(seed_q7(), seeds3, normal_subgroup_hypothesis=False)


def seed_q7():
    from braces.seeds import seed_q_braces

    return seed_q_braces(7)


def test_invalid_tau_rejected(seeds7, seeds3):
    aut = seeds7[0].automorphisms
    images = np.arange(9) % len(aut)
    with pytest.raises(PreconditionError):
        semidirect_brace(seeds7[0].brace, seeds3[0].brace, TauMorphism(seeds3[0].brace, aut, images))


# -- properties ---------------------------------------------------------------


def test_engine_count_and_split(engine37):
    assert len(engine37) == 55
    split = {}
    for B in engine37:
        split[B.additive.invariant_factors] = split.get(B.additive.invariant_factors, 0) + 1
    assert split == {(441,): 7, (3, 147): 8, (7, 63): 15, (21, 21): 25}


def test_equivalent_taus_give_isomorphic_braces(seeds7, seeds3):
    B1, B2 = seeds7[2].brace, seeds3[2].brace
    A1, A2 = seeds7[2].automorphisms, seeds3[2].automorphisms
    taus = enumerate_taus(B2, A1)
    res = tau_classes(taus, A1, A2)
    reps = {r.key for r, _ in res.classes}
    # a random non-representative τ is isomorphic to exactly one representative
    rng = np.random.default_rng(0)
    pick = [taus[i] for i in rng.choice(len(taus), 4, replace=False)]
    rep_braces = [semidirect_brace(B1, B2, r) for r, _ in res.classes]
    for t in pick:
        B = semidirect_brace(B1, B2, t)
        hits = [brace_isomorphic(B, R) for R in rep_braces]
        assert sum(hits) == 1
        if t.key in reps:
            assert hits[[r.key for r, _ in res.classes].index(t.key)]


def test_coprime_identity(engine37):
    assert all(coprime_identity_holds(B) for B in engine37)
    e1, e2 = embeddings(engine37[0])
    assert len(e1) == 49 and len(e2) == 9
