"""Acceptance criteria, one test each, with their time budgets.

Every test records a PASS/FAIL line (collected and printed at the end of
the run by conftest.py) before asserting.
"""

import itertools
import time

import numpy as np
import pytest

from braces.abelian import make_group
from braces.catalog import catalog_records, catalog_specs, count_report, full_catalog, record_for
from braces.core import verify_brace
from braces.engine import classify_mn, coprime_identity_holds
from braces.gl2 import verify_gl2_lemma
from braces.iso import brace_isomorphic
from braces.oracle import braces_on, oracle_match
from braces.seeds import seed_braces, seed_q_braces
from braces.ybe import brace_to_ybe, verify_braid

from conftest import record_criterion

P, Q = 3, 7


@pytest.fixture(scope="module")
def built():
    """The p=3, q=7 catalog with exhaustive verification, timed."""
    t = time.perf_counter()
    specs = catalog_specs(P, Q)
    braces = full_catalog(P, Q)
    reports = [verify_brace(B) for B in braces]
    records = [record_for(s, B) for s, B in zip(specs, braces)]
    return {"braces": braces, "reports": reports, "records": records, "seconds": time.perf_counter() - t}


@pytest.fixture(scope="module")
def engine():
    t = time.perf_counter()
    out = classify_mn(seed_q_braces(Q), seed_braces(P))
    return {"braces": out, "seconds": time.perf_counter() - t}


def test_criterion_01_seed_counts_match_oracle():
    t = time.perf_counter()
    seeds = [s.brace for s in seed_braces(P)]
    cyc, ele = braces_on(make_group([9])), braces_on(make_group([3, 3]))
    m1, m2 = oracle_match(cyc, seeds[:2]), oracle_match(ele, seeds[2:])
    dt = time.perf_counter() - t
    ok = len(cyc) == 2 and len(ele) == 2 and m1.perfect and m2.perfect and dt < 10
    record_criterion(1, ok, f"Z/9: {len(cyc)} classes, (Z/3)²: {len(ele)} classes, oracle match {m1.perfect and m2.perfect}, {dt:.1f} s")
    assert ok


def test_criterion_02_gl2_lemma():
    t = time.perf_counter()
    r1, r2 = verify_gl2_lemma(3, 7), verify_gl2_lemma(5, 11)
    dt = time.perf_counter() - t
    ok = r1.classes == 3 and r2.classes == 4 and r1.match and r2.match and dt < 10
    record_criterion(2, ok, f"(3,7): {r1.classes} classes, (5,11): {r2.classes} classes, representatives match {r1.match and r2.match}, {dt:.1f} s")
    assert ok


def test_criterion_03_catalog_integrity(built):
    rep = count_report(P, Q, built["records"])
    all_verified = all(built["reports"])
    split = tuple(rep.line(s, "total").actual for s in ("cc", "cn", "nc", "nn"))
    failing = [f"{ln.section}.{ln.item} expected {ln.expected} got {ln.actual}" for ln in rep.lines if not ln.ok]
    ok = all_verified and len(built["braces"]) == 55 and split == (7, 8, 15, 25) and rep.ok and built["seconds"] <= 300
    detail = f"{len(built['braces'])} braces, split {'/'.join(map(str, split))}, all verified {all_verified}, {built['seconds']:.0f} s"
    if failing:
        detail += "; breakdown lines failing: " + ", ".join(failing)
    record_criterion(3, ok, detail)
    assert ok


def test_criterion_04_pairwise_non_isomorphic(built):
    t = time.perf_counter()
    braces = built["braces"]
    hits = [(i, j) for i, j in itertools.combinations(range(len(braces)), 2) if brace_isomorphic(braces[i], braces[j])]
    dt = time.perf_counter() - t
    ok = not hits and dt <= 300
    record_criterion(4, ok, f"{len(braces) * (len(braces) - 1) // 2} pairs, isomorphic pairs {hits}, {dt:.0f} s")
    assert ok


def test_criterion_05_engine_matches_catalog(built, engine):
    t = time.perf_counter()
    m = oracle_match(engine["braces"], built["braces"])
    dt = engine["seconds"] + time.perf_counter() - t
    ok = len(engine["braces"]) == 55 and m.perfect and dt <= 600
    record_criterion(5, ok, f"engine {len(engine['braces'])} braces, perfect matching {m.perfect}, {dt:.0f} s")
    assert ok


def test_criterion_06_lambda_identities(built):
    bad = 0
    for B in built["braces"]:
        lam, add, mul = B.lam, B.add, B.mul
        additive = all((lam[a][add] == add[lam[a][:, None], lam[a][None, :]]).all() for a in range(B.size))
        composition = all((lam[mul[a]] == lam[a][lam]).all() for a in range(B.size))
        bad += not (additive and composition)
    ok = bad == 0
    record_criterion(6, ok, f"{len(built['braces']) - bad}/{len(built['braces'])} braces satisfy both λ-identities")
    assert ok


def test_criterion_07_coprime_identity(engine):
    good = sum(coprime_identity_holds(B) for B in engine["braces"])
    ok = good == len(engine["braces"])
    record_criterion(7, ok, f"{good}/{len(engine['braces'])} engine braces have a·b = a+b across the factors")
    assert ok


def test_criterion_08_ybe(built):
    t = time.perf_counter()
    good = 0
    for B in built["braces"]:
        S = brace_to_ybe(B)
        good += S.is_involutive() and S.is_nondegenerate() and verify_braid(S).holds
    dt = time.perf_counter() - t
    ok = good == 55 and dt <= 900
    record_criterion(8, ok, f"{good}/55 solutions involutive, non-degenerate and braided over 441³ triples, {dt:.0f} s")
    assert ok


def test_criterion_09_counts_at_5_11():
    t = time.perf_counter()
    records = list(catalog_records(5, 11, sample_triples=1_000_000))
    rep = count_report(5, 11, records)
    dt = time.perf_counter() - t
    split = tuple(rep.line(s, "total").actual for s in ("cc", "cn", "nc", "nn"))
    clean = all(r.verified and r.sampled for r in records)
    ok = split == (9, 8, 27, 39) and rep.total == 83 and clean and dt <= 1200
    failing = [f"{ln.section}.{ln.item}" for ln in rep.lines if not ln.ok]
    detail = f"{rep.total} braces, split {'/'.join(map(str, split))}, 10⁶ sampled triples each with no violation {clean}, {dt:.0f} s"
    if failing:
        detail += "; breakdown lines failing: " + ", ".join(failing)
    record_criterion(9, ok, detail)
    assert ok


def test_criterion_10_cross_term_adjudication(built, engine):
    rep = count_report(P, Q, built["records"])
    flagged = {r.spec.label: r.variant for r in rep.substitutions()}
    nc = [k for k in flagged if k.startswith(("mulnc5", "mulnc7"))]
    recorded = len(nc) == 1 + (P - 1) and all(flagged[k] == "cross-term y1y2" for k in nc)
    verified = all(r.verified for r in rep.records)
    totals = tuple(rep.line(s, "total").actual for s in ("cc", "cn", "nc", "nn")) == (7, 8, 15, 25)
    matched = oracle_match(engine["braces"], built["braces"]).perfect
    ok = recorded and verified and totals and matched
    record_criterion(
        10,
        ok,
        f"variants recorded {sorted(nc)} -> cross-term y1y2; totals hold {totals}; engine matching {matched}",
    )
    assert ok
