import numpy as np
import pytest

from braces.abelian import abelian_automorphisms
from braces.core import verify_brace
from braces.errors import InvalidArgument
from braces.iso import brace_automorphisms, brace_invariants, brace_isomorphic, brace_isomorphism, primary_components
from braces.seeds import SEED_KINDS, seed_braces, seed_q_braces
from braces.catalog import FamilySpec, build_family, identify_group
from braces.groups import group_fingerprint


# -- oracles ------------------------------------------------------------------


def test_seed_aut_orders(seeds3):
    assert [len(brace_automorphisms(s.brace)) for s in seeds3] == [6, 3, 48, 6]
    assert [s.kind for s in seeds3] == list(SEED_KINDS)


def test_seed_examples(seeds3, seeds7):
    C = seeds3[1]
    assert C.brace.mul[2, 2] == 7
    assert C.mult_to_add_iso[2] == 8
    E = seeds7[3].brace
    assert E.mul[E.element(1, 2), E.element(3, 1)] == E.element(6, 3)
    assert len(brace_automorphisms(E)) == 42
    assert [s.brace.size for s in seeds7] == [49] * 4


def test_seed_auts_closed_form(seeds3):
    assert sorted(int(r[1]) for r in brace_automorphisms(seeds3[1].brace)) == [1, 4, 7]
    for s in seeds3:
        assert (brace_automorphisms(s.brace) == s.automorphisms).all()


def test_seed_iso_transports_product(seeds3, seeds7):
    for s in list(seeds3) + list(seeds7):
        B, f = s.brace, s.mult_to_add_iso
        assert (f[B.mul] == B.add[f[:, None], f[None, :]]).all()
        assert verify_brace(B)


def test_seed_errors():
    with pytest.raises(InvalidArgument):
        seed_braces(2)
    with pytest.raises(InvalidArgument):
        seed_braces(9)


def test_seeds_pairwise_non_isomorphic(seeds3):
    braces = [s.brace for s in seeds3]
    for i in range(4):
        for j in range(4):
            assert brace_isomorphic(braces[i], braces[j]) == (i == j)


def test_mult_fingerprints(seeds3):
    assert group_fingerprint(seeds3[0].brace.mul).abelian_invariants == (9,)
    assert group_fingerprint(seeds3[1].brace.mul).abelian_invariants == (9,)
    B = build_family(FamilySpec(3, 7, "mulcc2"))
    assert not group_fingerprint(B.mul).is_abelian
    assert identify_group(B.mul, 3, 7) == "1.2"


def test_self_isomorphism_identity(seeds3):
    B = seeds3[3].brace
    f = brace_isomorphism(B, B)
    assert f is not None and f.is_isomorphism()


# -- properties ---------------------------------------------------------------


def test_isomorphism_of_relabelled_brace(catalog37):
    B = catalog37[30]
    G = B.additive
    aut = abelian_automorphisms(G)
    h = aut[len(aut) // 3]
    hinv = np.argsort(h)
    relabelled = type(B)(G, h[B.mul[hinv[:, None], hinv[None, :]]])
    f = brace_isomorphism(B, relabelled)
    assert f is not None and f.is_isomorphism()
    assert brace_invariants(B) == brace_invariants(relabelled)


def test_primary_components_are_sub_braces(catalog37):
    for B in catalog37[::9]:
        comps = primary_components(B)
        assert sorted(C.size for _, C, _ in comps) == [9, 49]
        for _, C, _ in comps:
            assert verify_brace(C)


def test_automorphisms_form_group(catalog37):
    A = brace_automorphisms(catalog37[-1])
    keys = {tuple(r) for r in A.tolist()}
    for f in A[:5]:
        for g in A[:5]:
            assert tuple(f[g].tolist()) in keys
