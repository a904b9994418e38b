"""Isomorphisms and automorphisms of finite left braces.

The primary components of (B, +) are sub-braces and every isomorphism
respects them, so a search runs component by component.  Within a
component the candidates are additive automorphisms h satisfying
h ∘ λ_a = λ_{h(a)} ∘ h for a in a generating set of (B, ·); the pieces are
then glued and checked against the generators of the whole group.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .abelian import FiniteAbelianGroup, abelian_automorphisms
from .core import BraceMap, BraceTable
from .groups import GroupFingerprint, generating_set, group_fingerprint

GLUE_CHUNK = 2048


def sub_brace(B: BraceTable, embedding: np.ndarray, G_sub: FiniteAbelianGroup, meta: Optional[dict] = None) -> BraceTable:
    """Restrict B to a sub-brace given by the embedding of its additive group."""
    pos = np.full(B.size, -1, dtype=np.int64)
    pos[embedding] = np.arange(len(embedding))
    mul = pos[B.mul[np.ix_(embedding, embedding)]]
    if (mul < 0).any():
        raise ValueError("embedding is not closed under multiplication")
    return BraceTable(G_sub, mul, dict(meta or {}))


def primary_components(B: BraceTable) -> list[tuple[int, BraceTable, np.ndarray]]:
    """(prime, sub-brace, embedding) for every prime dividing |B|."""
    out = []
    for r in B.additive.primes:
        G_r, emb = B.additive.primary_part(r)
        out.append((r, sub_brace(B, emb, G_r, {"component": r}), emb))
    return out


def mult_generators(B: BraceTable) -> list[int]:
    return generating_set(B.mul)


# -- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class BraceInvariants:
    size: int
    additive: tuple[int, ...]
    mult: GroupFingerprint
    socle: int
    fix: int
    lambda_image: int
    orbit_sizes: tuple[tuple[int, int], ...]

    def digest(self) -> str:
        return hashlib.sha1(repr(self).encode()).hexdigest()[:16]


def lambda_orbits(B: BraceTable) -> np.ndarray:
    """Label of each element's orbit under the λ-action (smallest member)."""
    lam = B.lam
    label = np.arange(B.size)
    while True:
        new = label[lam].min(axis=0)
        new = np.minimum(new, label)
        if (new == label).all():
            return label
        label = new


def brace_invariants(B: BraceTable) -> BraceInvariants:
    cached = B.__dict__.get("_invariants")
    if cached is None:
        cached = _compute_invariants(B)
        object.__setattr__(B, "_invariants", cached)
    return cached


def _compute_invariants(B: BraceTable) -> BraceInvariants:
    lam = B.lam
    ids = np.arange(B.size)
    socle = int((lam == ids[None, :]).all(axis=1).sum())
    fix = int((lam == ids[None, :]).all(axis=0).sum())
    image = len(np.unique(lam, axis=0))
    orbits = Counter(Counter(lambda_orbits(B).tolist()).values())
    return BraceInvariants(
        B.size,
        B.additive.invariant_factors,
        group_fingerprint(B.mul),
        socle,
        fix,
        image,
        tuple(sorted(orbits.items())),
    )


# -- search -------------------------------------------------------------------


def _intertwiners(H: np.ndarray, A: BraceTable, B: BraceTable, gens: list[int]) -> np.ndarray:
    """Rows h of H with h ∘ λ^A_a = λ^B_{h(a)} ∘ h for each a in gens."""
    lamA, lamB = A.lam.astype(np.int64), B.lam.astype(np.int64)
    keep = np.ones(len(H), dtype=bool)
    for a in gens:
        h = H[keep]
        ok = (h[:, lamA[a]] == lamB[h[:, a][:, None], h]).all(axis=1)
        idx = np.nonzero(keep)[0]
        keep[idx[~ok]] = False
    return H[keep]


def brace_isomorphisms(A: BraceTable, B: BraceTable, limit: Optional[int] = None, check_invariants: bool = True) -> list[np.ndarray]:
    """All isomorphisms A -> B as image arrays (at most `limit` of them)."""
    if A.additive.invariant_factors != B.additive.invariant_factors:
        return []
    if check_invariants and A is not B and brace_invariants(A) != brace_invariants(B):
        return []
    G = A.additive
    compsA, compsB = primary_components(A), primary_components(B)
    cands = []
    for (r, Ar, emb), (_, Br, _) in zip(compsA, compsB):
        H = abelian_automorphisms(Ar.additive)
        H = _intertwiners(H, Ar, Br, mult_generators(Ar))
        if len(H) == 0:
            return []
        cands.append((r, H, emb))
    if len(cands) == 1:
        _, H, emb = cands[0]
        out = [emb[h] for h in H]  # emb is the identity here up to reindexing
        return out[:limit] if limit is not None else out

    # glue: f(x) = Σ_r emb_r(h_r(x_r))
    add = G.add_table.astype(np.int64)
    local = []
    for r, H, emb in cands:
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[emb] = np.arange(len(emb))
        local.append(pos[G.projection(r)])
    big = max(range(len(cands)), key=lambda i: len(cands[i][1]))
    rest = [i for i in range(len(cands)) if i != big]
    gens = mult_generators(A)
    lamA, lamB = A.lam.astype(np.int64), B.lam.astype(np.int64)
    _, Hb, embb = cands[big]
    out: list[np.ndarray] = []
    for choice in itertools.product(*(range(len(cands[i][1])) for i in rest)):
        partial = np.zeros(G.order, dtype=np.int64)
        for i, k in zip(rest, choice):
            _, H, emb = cands[i]
            partial = add[partial, emb[H[k][local[i]]]]
        for start in range(0, len(Hb), GLUE_CHUNK):
            F = add[partial[None, :], embb[Hb[start : start + GLUE_CHUNK][:, local[big]]]]
            ok = np.ones(len(F), dtype=bool)
            for a in gens:
                ok &= (F[:, lamA[a]] == lamB[F[:, a][:, None], F]).all(axis=1)
            for row in F[ok]:
                out.append(row)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def brace_isomorphism(A: BraceTable, B: BraceTable) -> Optional[BraceMap]:
    found = brace_isomorphisms(A, B, limit=1)
    return BraceMap(A, B, found[0]) if found else None


def brace_isomorphic(A: BraceTable, B: BraceTable) -> bool:
    return brace_isomorphism(A, B) is not None


def brace_automorphisms(B: BraceTable) -> np.ndarray:
    """Aut(B) as a (K, n) array of image rows, sorted lexicographically."""
    rows = brace_isomorphisms(B, B, check_invariants=False)
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), B.size)
    return arr[np.lexsort(arr.T[::-1])]
