import numpy as np
import pytest

from braces.abelian import make_group
from braces.core import BraceTable, make_trivial_brace, verify_brace
from braces.errors import ResourceLimitError
from braces.oracle import HolomorphGroup, brace_to_subgroup, braces_on, oracle_match, regular_subgroups, subgroup_to_brace
from braces.iso import brace_isomorphic
from braces.ybe import YbeSolution, brace_to_ybe, conjugate, flip, same_solution, verify_braid


# -- oracle -------------------------------------------------------------------


@pytest.mark.parametrize("factors, count", [([9], 2), ([3, 3], 2), ([5], 1), ([7], 1), ([4], 2), ([2, 2], 2)])
def test_braces_on_counts(factors, count):
    out = braces_on(make_group(factors))
    assert len(out) == count
    assert all(verify_brace(B) for B in out)


def test_braces_on_order_8():
    # 27 braces of size 8 in total
    assert sum(len(braces_on(make_group(f))) for f in ([8], [2, 4], [2, 2, 2])) == 27


def test_oracle_matches_seeds(seeds3):
    S = [s.brace for s in seeds3]
    assert oracle_match(braces_on(make_group([9])), S[:2]).perfect
    assert oracle_match(braces_on(make_group([3, 3])), S[2:]).perfect


def test_oracle_reports_corrupted(seeds3):
    B = seeds3[1].brace
    m = B.mul.copy()
    m[1, 1] = (m[1, 1] + 1) % 9
    rep = oracle_match(braces_on(make_group([9])), [seeds3[0].brace, BraceTable(B.additive, m)])
    assert not rep.perfect and rep.unmatched_catalog == [1] and rep.unmatched_oracle == [1]


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        braces_on(make_group([2, 2, 2, 2]))


def test_round_trip_through_holomorph(seeds3):
    for s in seeds3:
        H = HolomorphGroup.of(s.brace.additive)
        over = brace_to_subgroup(H, s.brace)
        assert (subgroup_to_brace(H, over).mul == s.brace.mul).all()


def test_enumeration_order_independent():
    G = make_group([3, 3])
    H = HolomorphGroup.of(G)
    subs = regular_subgroups(H)
    H2 = HolomorphGroup(G, H.aut[::-1].copy())
    subs2 = regular_subgroups(H2)
    assert len(subs) == len(subs2)


# -- ybe ----------------------------------------------------------------------


def test_flip():
    S = flip(5)
    assert verify_braid(S).holds and S.is_involutive() and S.is_nondegenerate()
    assert same_solution(brace_to_ybe(make_trivial_brace(make_group([5]))), S)


def test_z9_example(seeds3):
    B = seeds3[1].brace
    S = brace_to_ybe(B)
    u, v = S(1, 1)
    assert u == 4
    assert v == B.mul[B.mul_inverse[4], B.mul[1, 1]]
    assert S.is_involutive() and S.is_nondegenerate()


def test_random_table_fails():
    rng = np.random.default_rng(3)
    S = YbeSolution(rng.integers(0, 6, (6, 6)), rng.integers(0, 6, (6, 6)))
    rep = verify_braid(S)
    assert not rep.holds and rep.witness is not None
    assert not verify_braid(S, sample=2000).holds


def test_isomorphic_braces_give_conjugate_solutions(seeds3):
    for s in seeds3:
        B = s.brace
        h = s.automorphisms[-1]
        hinv = np.argsort(h)
        C = BraceTable(B.additive, h[B.mul[hinv[:, None], hinv[None, :]]])
        assert same_solution(conjugate(brace_to_ybe(B), h), brace_to_ybe(C))


def test_seed_solutions(seeds3):
    for s in seeds3:
        S = brace_to_ybe(s.brace)
        assert S.is_involutive() and S.is_nondegenerate() and verify_braid(S).holds
