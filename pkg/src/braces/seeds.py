"""The four braces of size p² and their automorphism groups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian import abelian_automorphisms, make_group
from .arith import is_prime
from .core import BraceTable, brace_from_law, make_trivial_brace
from .errors import InvalidArgument, PreconditionError
from .iso import brace_automorphisms

SEED_KINDS = ("cyclic-trivial", "cyclic-nontrivial", "elementary-trivial", "elementary-nontrivial")
SEED_BOUND = 1000


@dataclass(frozen=True, eq=False)
class SeedBrace:
    brace: BraceTable
    kind: str
    mult_to_add_iso: np.ndarray
    automorphisms: np.ndarray  # closed form, rows sorted

    @property
    def p(self) -> int:
        return int(self.brace.meta["p"])


def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 2:
        raise InvalidArgument(f"{p!r} is not a prime")
    if p == 2:
        raise InvalidArgument("p must be odd (the isomorphism formulas divide by 2)")
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not a prime")
    if p * p > SEED_BOUND:
        raise PreconditionError(f"p² = {p * p} exceeds {SEED_BOUND}")


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    return rows[np.lexsort(rows.T[::-1])]


def _cyclic(p: int, nontrivial: bool) -> SeedBrace:
    n = p * p
    G = make_group([n])
    k = np.arange(n)
    half = pow(2, -1, n)
    if nontrivial:
        B = brace_from_law(G, [n], lambda x, y: (x[0] + y[0] + p * x[0] * y[0],), {"kind": SEED_KINDS[1], "p": p})
        iso = (k - p * k * (k - 1) * half) % n
        units = [u for u in range(1, n) if u % p == 1]
    else:
        B = make_trivial_brace(G, {"kind": SEED_KINDS[0], "p": p})
        iso = k.copy()
        units = [u for u in range(1, n) if u % p]
    auts = np.array([(u * k) % n for u in units])
    return SeedBrace(B, B.meta["kind"], iso, _sorted_rows(auts))


def _elementary(p: int, nontrivial: bool) -> SeedBrace:
    G = make_group([p, p])
    to_g = G.product_map([p, p])
    from_g = np.empty(p * p, dtype=np.int64)
    from_g[to_g] = np.arange(p * p)
    x, y = from_g % p, from_g // p
    half = pow(2, -1, p)
    if nontrivial:
        B = brace_from_law(G, [p, p], lambda a, b: (a[0] + b[0] + a[1] * b[1], a[1] + b[1]), {"kind": SEED_KINDS[3], "p": p})
        iso = to_g[(x - y * (y - 1) * half) % p + p * y]
        # (x, y) -> (d²x + by, dy)
        auts = [to_g[(d * d * x + b * y) % p + p * ((d * y) % p)] for d in range(1, p) for b in range(p)]
    else:
        B = make_trivial_brace(G, {"kind": SEED_KINDS[2], "p": p})
        iso = np.arange(p * p)
        auts = list(abelian_automorphisms(G))
    return SeedBrace(B, B.meta["kind"], iso, _sorted_rows(np.array(auts)))


def _check_seed(s: SeedBrace) -> None:
    B = s.brace
    f = s.mult_to_add_iso
    if not (f[B.mul] == B.add[f[:, None], f[None, :]]).all():
        raise AssertionError(f"{s.kind}: mult_to_add_iso is not a homomorphism")
    brute = brace_automorphisms(B)
    if brute.shape != s.automorphisms.shape or not (brute == s.automorphisms).all():
        raise AssertionError(f"{s.kind}: closed-form automorphism group differs from the search")


def seed_braces(p: int) -> list[SeedBrace]:
    """cyclic-trivial, cyclic-nontrivial, elementary-trivial, elementary-nontrivial."""
    _check_prime(p)
    seeds = [_cyclic(p, False), _cyclic(p, True), _elementary(p, False), _elementary(p, True)]
    for s in seeds:
        _check_seed(s)
    return seeds


def seed_q_braces(q: int) -> list[SeedBrace]:
    return seed_braces(q)
