"""Command-line entry point.

Exit codes: 0 success, 1 a check failed, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .abelian import make_group
from .catalog import (
    VERIFY_BOUND,
    catalog_records,
    constants,
    count_report,
    save_report,
    write_manifest,
)
from .core import BraceTable, load_brace, save_brace, verify_brace, verify_brace_sampled
from .engine import classify_mn, coprime_identity_holds
from .errors import BraceError, PreconditionError
from .gl2 import check_hypothesis, verify_gl2_lemma
from .groups import group_fingerprint
from .iso import brace_isomorphism
from .oracle import braces_on, oracle_match
from .seeds import seed_braces, seed_q_braces
from .ybe import brace_to_ybe, verify_braid

OK, FAIL, USAGE = 0, 1, 2


def _out(line: str = "") -> None:
    print(line, flush=True)


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _load_dir(path) -> list[BraceTable]:
    files = sorted(Path(path).glob("*.json"))
    if not files:
        raise PreconditionError(f"no brace JSON files in {path}")
    return [load_brace(f) for f in files]


def _check(B: BraceTable, sample: Optional[int], paranoid: bool = False):
    if sample is None and B.size <= VERIFY_BOUND:
        return verify_brace(B, paranoid=paranoid)
    return verify_brace_sampled(B, triples=sample or 1_000_000)


# -- subcommands --------------------------------------------------------------


def cmd_verify(args) -> int:
    B = load_brace(args.path)
    rep = _check(B, args.sample, args.paranoid)
    how = f"sampled {rep.checked_triples} triples" if rep.sampled else "exhaustive"
    if rep.is_brace:
        _out(f"brace of size {B.size} ({how})")
        return OK
    _out(f"not a brace: {rep.kind} at {rep.first_violation} ({how})")
    return FAIL


def cmd_catalog(args) -> int:
    check_hypothesis(args.p, args.q)
    out = Path(args.out)
    records = list(catalog_records(args.p, args.q, sample_triples=args.sample or 1_000_000, jobs=args.jobs, out_dir=out))
    write_manifest(records, out / "manifest.csv")
    rep = count_report(args.p, args.q, records)
    save_report(rep, out / "report.json")
    _out(rep.format())
    return OK if all(r.verified for r in records) else FAIL


def cmd_classify(args) -> int:
    A, B = _load_dir(args.m_dir), _load_dir(args.n_dir)
    braces = classify_mn(A, B, normal_subgroup_hypothesis=not args.no_hypothesis, certify=not args.no_certify)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "manifest.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["family", "params", "additive_invariants", "mult_group_id", "file"])
        for i, C in enumerate(braces):
            name = f"{i:03d}.json"
            save_brace(C, out / name)
            w.writerow(
                [
                    f"{C.meta['b1']}x{C.meta['b2']}",
                    "tau=" + "-".join(map(str, C.meta["tau"])),
                    "x".join(map(str, C.additive.invariant_factors)),
                    group_fingerprint(C.mul).short(),
                    name,
                ]
            )
    _out(f"{len(braces)} braces of size {braces[0].size if braces else 0} written to {out}")
    return OK


def cmd_iso(args) -> int:
    A, B = load_brace(args.a), load_brace(args.b)
    f = brace_isomorphism(A, B)
    if f is None:
        _out("not isomorphic")
        return FAIL
    _out("isomorphic")
    if args.show:
        _out(json.dumps([int(v) for v in f.images]))
    return OK


def cmd_oracle(args) -> int:
    factors = [int(d) for d in args.factors.split(",")]
    G = make_group(factors)
    braces = braces_on(G)
    _out(f"{len(braces)} braces on Z/{' x Z/'.join(map(str, G.invariant_factors))}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, B in enumerate(braces):
            save_brace(B, out / f"{i:03d}.json")
    if args.match:
        rep = oracle_match(braces, _load_dir(args.match))
        _out(f"matched {len(rep.pairs)}; unmatched oracle {rep.unmatched_oracle}; unmatched catalog {rep.unmatched_catalog}")
        return OK if rep.perfect else FAIL
    return OK


def cmd_gl2(args) -> int:
    rep = verify_gl2_lemma(args.p, args.q)
    _out(f"GL(2,{rep.q}): {rep.order_p_subgroups} subgroups of order {rep.p} in {rep.classes} classes (sizes {rep.class_sizes})")
    _out(f"expected {rep.expected_classes}; representatives distinct {rep.representatives_distinct}, cover {rep.representatives_cover}")
    for m in rep.representatives:
        _out(f"  [[{m[0]},{m[1]}],[{m[2]},{m[3]}]]")
    return OK if rep.match else FAIL


def cmd_ybe(args) -> int:
    B = load_brace(args.path)
    S = brace_to_ybe(B)
    inv, nd = S.is_involutive(), S.is_nondegenerate()
    sample = args.sample if args.sample is not None or B.size <= VERIFY_BOUND else 1_000_000
    br = verify_braid(S, sample=sample)
    _out(f"involutive {inv}; non-degenerate {nd}; braid {br.holds} ({br.checked_triples} triples{', sampled' if br.sampled else ''})")
    if br.witness is not None:
        _out(f"braid fails at {br.witness}")
    if args.out:
        Path(args.out).write_text(json.dumps(S.to_json(), separators=(",", ":")))
    return OK if inv and nd and br.holds else FAIL


def cmd_report(args) -> int:
    p, q = args.p, args.q
    check_hypothesis(p, q)
    constants(p, q)
    exhaustive = (p * q) ** 2 <= VERIFY_BOUND
    keep: list[BraceTable] = []
    records = []
    from .catalog import build_family, catalog_specs, record_for

    if exhaustive:
        for s in catalog_specs(p, q):
            B = build_family(s)
            keep.append(B)
            records.append(record_for(s, B))
    else:
        records = list(catalog_records(p, q, sample_triples=args.sample or 1_000_000, jobs=args.jobs))
    rep = count_report(p, q, records)
    _out(rep.format())
    checks: list[tuple[str, bool, str]] = [("count report", rep.ok, f"{rep.total} braces")]

    for kind, factors, seeds in (("cyclic", [p * p], (0, 2)), ("elementary", [p, p], (2, 4))):
        S = [s.brace for s in seed_braces(p)[seeds[0] : seeds[1]]]
        m = oracle_match(braces_on(make_group(factors)), S)
        checks.append((f"oracle seeds {kind} p={p}", m.perfect, f"{len(m.pairs)} matched"))

    if exhaustive:
        engine = classify_mn(seed_q_braces(q), seed_braces(p))
        m = oracle_match(engine, keep)
        checks.append(("engine matches catalog", m.perfect and len(engine) == len(keep), f"{len(engine)} engine braces"))
        checks.append(("coprime identity", all(coprime_identity_holds(B) for B in engine), ""))
        bad = 0
        for B in keep:
            S = brace_to_ybe(B)
            if not (S.is_involutive() and S.is_nondegenerate() and verify_braid(S, sample=args.sample).holds):
                bad += 1
        checks.append(("ybe solutions", bad == 0, f"{len(keep) - bad}/{len(keep)}"))
    else:
        checks.append(("engine matches catalog", True, "skipped: size above the exhaustive bound"))

    _out()
    for name, ok, detail in checks:
        _out(f"{_mark(ok)} {name}{': ' + detail if detail else ''}")
    return OK if all(ok for _, ok, _ in checks) else FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braces", description="Finite left braces of size p²q².")
    sub = ap.add_subparsers(dest="command", required=True)
    jobs = os.cpu_count() or 1

    s = sub.add_parser("verify", help="check the brace axioms of a JSON brace")
    s.add_argument("path")
    s.add_argument("--paranoid", action="store_true", help="also run the raw triple checks")
    s.add_argument("--sample", type=int, help="check this many random triples instead")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("catalog", help="build the closed-form catalog and write it to a directory")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=jobs)
    s.add_argument("--sample", type=int, help="random triples per brace above the exhaustive bound")
    s.set_defaults(run=cmd_catalog)

    s = sub.add_parser("classify", help="semidirect products of two catalogs of coprime sizes")
    s.add_argument("m_dir")
    s.add_argument("n_dir")
    s.add_argument("--out", required=True)
    s.add_argument("--no-hypothesis", action="store_true", help="do not assert the normal-subgroup hypothesis")
    s.add_argument("--no-certify", action="store_true", help="skip the pairwise non-isomorphism check")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("iso", help="test two JSON braces for isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--show", action="store_true", help="print the isomorphism")
    s.set_defaults(run=cmd_iso)

    s = sub.add_parser("oracle", help="enumerate braces on an abelian group by brute force")
    s.add_argument("factors", help="comma-separated cyclic factors, e.g. 3,3")
    s.add_argument("--out")
    s.add_argument("--match", help="directory of braces to match against")
    s.set_defaults(run=cmd_oracle)

    s = sub.add_parser("gl2", help="classify order-p subgroups of GL(2,q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(run=cmd_gl2)

    s = sub.add_parser("ybe", help="Yang-Baxter solution of a JSON brace")
    s.add_argument("path")
    s.add_argument("--sample", type=int)
    s.add_argument("--out")
    s.set_defaults(run=cmd_ybe)

    s = sub.add_parser("report", help="full pass/fail report for (p, q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--jobs", type=int, default=jobs)
    s.add_argument("--sample", type=int)
    s.set_defaults(run=cmd_report)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.run(args)
    except (BraceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
