import json

import numpy as np
import pytest

from braces.abelian import make_group
from braces.core import (
    BraceMap,
    BraceTable,
    brace_from_json,
    brace_from_law,
    brace_to_json,
    lambda_map,
    load_brace,
    make_trivial_brace,
    save_brace,
    verify_brace,
    verify_brace_sampled,
)
from braces.errors import InvalidArgument, ResourceLimitError

Z9 = make_group([9])


def z9_law(f):
    return brace_from_law(Z9, [9], lambda X, Y: (f(X[0], Y[0]),))


# -- oracles ------------------------------------------------------------------


def test_trivial_braces():
    B = make_trivial_brace(Z9)
    assert B.mul[4, 5] == 0
    assert verify_brace(B).is_brace
    E = make_trivial_brace(make_group([3, 3]))
    assert (E.lam == np.arange(9)[None, :]).all()
    assert make_trivial_brace(make_group([2])).size == 2


def test_verify_examples():
    assert verify_brace(z9_law(lambda x, y: x + y + 3 * x * y)).is_brace
    rep = verify_brace(z9_law(lambda x, y: x + y + x * x * y))
    assert not rep.is_brace and rep.first_violation is not None


def test_cubic_law_violation_is_associativity():
    # the left-brace law itself holds for x+y+x²y; associativity breaks
    B = z9_law(lambda x, y: x + y + x * x * y)
    rep = verify_brace(B, paranoid=True)
    assert rep.kind == "associativity"
    a, b, c = rep.first_violation
    assert B.mul[B.mul[a, b], c] != B.mul[a, B.mul[b, c]]


def test_lambda_map_examples():
    B = z9_law(lambda x, y: x + y + 3 * x * y)
    assert lambda_map(B, 1).tolist() == [0, 4, 8, 3, 7, 2, 6, 1, 5]
    assert (lambda_map(make_trivial_brace(Z9), 5) == np.arange(9)).all()
    G = make_group([3, 3])
    E = brace_from_law(G, [3, 3], lambda X, Y: (X[0] + Y[0] + X[1] * Y[1], X[1] + Y[1]))
    a = E.element(0, 1)
    for x in range(3):
        for y in range(3):
            assert lambda_map(E, a)[E.element(x, y)] == E.element(x + y, y)


def test_verify_bound():
    G = make_group([1001])
    with pytest.raises(ResourceLimitError):
        verify_brace(make_trivial_brace(G))


def test_sampled_verification():
    assert verify_brace_sampled(z9_law(lambda x, y: x + y + 3 * x * y), triples=5000).is_brace
    assert not verify_brace_sampled(z9_law(lambda x, y: x + y + x * x * y), triples=5000).is_brace


def test_bad_tables_rejected():
    with pytest.raises(InvalidArgument):
        BraceTable(Z9, np.zeros((9, 9), dtype=int))
    with pytest.raises(InvalidArgument):
        BraceTable(Z9, np.zeros((3, 3), dtype=int))


def test_row_violation_reported():
    B = z9_law(lambda x, y: x + y + 3 * x * y)
    m = B.mul.copy()
    m[2, 3] = m[2, 4]
    rep = verify_brace(BraceTable(Z9, m))
    assert rep.kind == "row-not-bijective" and rep.first_violation[0] == 2


def test_json_round_trip(tmp_path):
    B = z9_law(lambda x, y: x + y + 3 * x * y)
    B.meta["kind"] = "cyclic-nontrivial"
    path = tmp_path / "b.json"
    save_brace(B, path)
    C = load_brace(path)
    assert (C.mul == B.mul).all() and C.meta["kind"] == "cyclic-nontrivial"
    assert brace_from_json(json.loads(json.dumps(brace_to_json(B)))).size == 9
    with pytest.raises(InvalidArgument):
        brace_from_json({"size": 9})


def test_brace_map_checks():
    B = z9_law(lambda x, y: x + y + 3 * x * y)
    ident = BraceMap(B, B, np.arange(9))
    assert ident.is_isomorphism()
    double = BraceMap(B, B, (2 * np.arange(9)) % 9)
    assert double.is_additive() and not double.is_multiplicative()


# -- properties ---------------------------------------------------------------


def test_product_is_a_plus_lambda(seeds3):
    for s in seeds3:
        B = s.brace
        a, b = np.indices((9, 9))
        assert (B.mul == B.add[a, B.lam[a, b]]).all()
