"""Invariants and isomorphism tests for finite groups given by Cayley tables.

Tables use index 0 as the identity.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .abelian import normalize_factors
from .arith import factorize


def element_orders(table: np.ndarray) -> np.ndarray:
    n = len(table)
    ids = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = ids.copy()
    for k in range(1, n + 1):
        done = (cur == 0) & (orders == 0)
        orders[done] = k
        if (orders > 0).all():
            break
        cur = table[cur, ids]
    return orders


def inverses(table: np.ndarray) -> np.ndarray:
    hits = np.argwhere(table == 0)
    inv = np.empty(len(table), dtype=np.int64)
    inv[hits[:, 0]] = hits[:, 1]
    return inv


def closure(table: np.ndarray, elements) -> np.ndarray:
    """Subgroup generated by `elements` (sorted index array)."""
    members = np.zeros(len(table), dtype=bool)
    members[0] = True
    members[np.asarray(elements, dtype=np.int64)] = True
    gens = np.nonzero(members)[0]
    frontier = gens
    while len(frontier):
        new = np.unique(table[np.ix_(frontier, gens)])
        new = new[~members[new]]
        members[new] = True
        frontier = new
    return np.nonzero(members)[0]


def generating_set(table: np.ndarray, orders: Optional[np.ndarray] = None) -> list[int]:
    """Greedy small generating set, preferring elements of large order."""
    if orders is None:
        orders = element_orders(table)
    n = len(table)
    candidates = sorted(range(1, n), key=lambda g: (-orders[g], g))
    gens: list[int] = []
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    for g in candidates:
        if inside.all():
            break
        if inside[g]:
            continue
        gens.append(g)
        inside[:] = False
        inside[closure(table, gens)] = True
    return gens


def center(table: np.ndarray) -> np.ndarray:
    return np.nonzero((table == table.T).all(axis=1))[0]


def derived_subgroup(table: np.ndarray) -> np.ndarray:
    inv = inverses(table)
    comm = table[table[inv[:, None], inv[None, :]], table]
    return closure(table, np.unique(comm))


def abelian_invariants(table: np.ndarray, orders: Optional[np.ndarray] = None) -> tuple[int, ...]:
    """Invariant factors of an abelian group from its element orders."""
    if orders is None:
        orders = element_orders(table)
    n = len(table)
    factors = []
    for prime, e in factorize(n).items():
        counts = [int((prime**k % orders == 0).sum()) for k in range(e + 1)]
        # number of cyclic factors of order >= prime^k is log_prime(c_k / c_{k-1})
        ge = []
        for k in range(1, e + 1):
            ratio = counts[k] // counts[k - 1]
            r = 0
            while ratio > 1:
                ratio //= prime
                r += 1
            ge.append(r)
        for k in range(1, e + 1):
            exactly = ge[k - 1] - (ge[k] if k < e else 0)
            factors += [prime**k] * exactly
    return normalize_factors(factors) if factors else ()


def conjugation_spectrum(table: np.ndarray, orders: np.ndarray, max_sylow: int = 2048) -> tuple:
    """For each normal Sylow subgroup P, the multiset over g of
    {(ord h, j) : h in P, g h g^-1 = h^j} (j = -1 when no such power exists)."""
    n = len(table)
    inv = inverses(table)
    out = []
    for prime, e in sorted(factorize(n).items()):
        ppow = prime**e
        in_p = np.nonzero(ppow % orders == 0)[0]
        if len(in_p) != ppow or ppow > max_sylow:
            continue
        h = in_p[in_p != 0]
        # pos[i, x] = j with x = h_i^j, else -1
        pos = np.full((len(h), n), -1, dtype=np.int64)
        cur = np.zeros(len(h), dtype=np.int64)
        for j in range(int(orders[h].max())):
            live = j < orders[h]
            pos[np.nonzero(live)[0], cur[live]] = j
            cur = table[cur, h]
        conj = table[table[:, h], inv[:, None]]  # (n, |h|): g h g^-1
        js = pos[np.arange(len(h))[None, :], conj]
        oh = orders[h]
        per_g = Counter()
        for g in range(n):
            per_g[tuple(sorted(zip(oh.tolist(), js[g].tolist())))] += 1
        out.append((prime, tuple(sorted(per_g.items()))))
    return tuple(out)


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    order_counts: tuple[tuple[int, int], ...]
    center_size: int
    derived_size: int
    abelian_invariants: Optional[tuple[int, ...]]
    spectrum_digest: Optional[str]

    @property
    def is_abelian(self) -> bool:
        return self.abelian_invariants is not None

    def short(self) -> str:
        if self.is_abelian:
            return "abelian(" + ",".join(map(str, self.abelian_invariants)) + ")"
        return f"nonabelian(|Z|={self.center_size},|G'|={self.derived_size},{self.spectrum_digest[:10]})"


def group_fingerprint(table: np.ndarray) -> GroupFingerprint:
    table = np.asarray(table)
    orders = element_orders(table)
    oc = tuple(sorted(Counter(orders.tolist()).items()))
    z = center(table)
    abelian = len(z) == len(table)
    if abelian:
        return GroupFingerprint(len(table), oc, len(z), 1, abelian_invariants(table, orders), None)
    spec = conjugation_spectrum(table, orders)
    digest = hashlib.sha1(repr(spec).encode()).hexdigest()
    return GroupFingerprint(len(table), oc, len(z), len(derived_subgroup(table)), None, digest)


# -- isomorphism (fallback when fingerprints tie) -----------------------------


def _word_tree(table: np.ndarray, gens: list[int]):
    """BFS spanning tree: for every element x != 0, (parent, generator index)
    with x = parent · gens[i]."""
    n = len(table)
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = int(table[x, g])
                if not seen[y]:
                    seen[y] = True
                    parent[y], via[y] = x, i
                    nxt.append(y)
                    order.append(y)
        frontier = nxt
    return order, parent, via


def group_isomorphism(t1: np.ndarray, t2: np.ndarray) -> Optional[np.ndarray]:
    """An isomorphism between two groups given by tables, or None.

    Backtracks over images of a generating set of the first group, matching
    element orders and centraliser sizes.
    """
    t1, t2 = np.asarray(t1), np.asarray(t2)
    n = len(t1)
    if len(t2) != n:
        return None
    o1, o2 = element_orders(t1), element_orders(t2)
    if sorted(o1.tolist()) != sorted(o2.tolist()):
        return None
    c1 = (t1 == t1.T).sum(axis=1)
    c2 = (t2 == t2.T).sum(axis=1)
    gens = generating_set(t1, o1)
    order, parent, via = _word_tree(t1, gens)
    cands = [np.nonzero((o2 == o1[g]) & (c2 == c1[g]))[0] for g in gens]

    def attempt(images: list[int]) -> Optional[np.ndarray]:
        f = np.full(n, -1, dtype=np.int64)
        f[0] = 0
        for x in order[1:]:
            f[x] = t2[f[parent[x]], images[via[x]]]
        if len(np.unique(f)) != n:
            return None
        # homomorphism check on generators suffices given the word tree
        for i, g in enumerate(gens):
            if not (f[t1[:, g]] == t2[f, images[i]]).all():
                return None
        return f

    def search(i: int, images: list[int]) -> Optional[np.ndarray]:
        if i == len(gens):
            return attempt(images)
        for c in cands[i]:
            # relation pruning among the generators chosen so far
            ok = True
            for j in range(i):
                if t2[c, images[j]] == t2[images[j], c] and t1[gens[i], gens[j]] != t1[gens[j], gens[i]]:
                    ok = False
                    break
                if t2[c, images[j]] != t2[images[j], c] and t1[gens[i], gens[j]] == t1[gens[j], gens[i]]:
                    ok = False
                    break
            if not ok:
                continue
            got = search(i + 1, images + [int(c)])
            if got is not None:
                return got
        return None

    return search(0, [])


def groups_isomorphic(t1: np.ndarray, t2: np.ndarray) -> bool:
    if group_fingerprint(t1) != group_fingerprint(t2):
        return False
    return group_isomorphism(t1, t2) is not None
