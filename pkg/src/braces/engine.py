"""Semidirect products of braces and their classification up to isomorphism.

For coprime |B1|, |B2| every isomorphism between semidirect products
B1 ⋊_σ B2 and B1 ⋊_τ B2 has the form (a, b) -> (h1(a), h2(b)) with h_i
brace automorphisms and τ(h2(b)) = h1 σ(b) h1⁻¹, so the classes are the
orbits of Aut(B1) x Aut(B2) on the τ-morphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .abelian import inverse_perm, make_group, perm_key, small_generating_set
from .core import BraceTable
from .errors import PreconditionError
from .groups import _word_tree, element_orders, generating_set
from .iso import brace_automorphisms, brace_isomorphic


@dataclass(frozen=True, eq=False)
class TauMorphism:
    """A group morphism (B2, ·) -> Aut(B1, +, ·).

    ``images[b]`` indexes the row of ``target_aut`` that b is sent to.
    """

    source: BraceTable
    target_aut: np.ndarray
    images: np.ndarray

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.images)

    def perm(self, b: int) -> np.ndarray:
        return self.target_aut[self.images[b]]

    def is_trivial(self) -> bool:
        return bool((self.target_aut[self.images] == np.arange(self.target_aut.shape[1])).all())

    def is_valid(self) -> bool:
        T = self.target_aut[self.images]  # (n2, n1)
        if not (T[0] == np.arange(T.shape[1])).all():
            return False
        mul = self.source.mul
        # τ(b·b') = τ(b) ∘ τ(b')
        lhs = T[mul]  # (n2, n2, n1)
        rhs = np.take_along_axis(T[:, None, :], T[None, :, :], axis=2)
        return bool((lhs == rhs).all())


def _aut_index(aut: np.ndarray) -> dict[bytes, int]:
    return {perm_key(row): i for i, row in enumerate(aut)}


def _perm_orders(aut: np.ndarray) -> np.ndarray:
    ident = np.arange(aut.shape[1])
    orders = np.zeros(len(aut), dtype=np.int64)
    cur = aut.copy()
    k = 1
    while (orders == 0).any():
        done = (cur == ident).all(axis=1) & (orders == 0)
        orders[done] = k
        cur = np.take_along_axis(aut, cur, axis=1)  # aut ∘ cur
        k += 1
    return orders


def enumerate_taus(B2: BraceTable, autB1: np.ndarray) -> list[TauMorphism]:
    """All group morphisms (B2, ·) -> the group of permutations `autB1`."""
    autB1 = np.asarray(autB1, dtype=np.int64)
    index = _aut_index(autB1)
    mul = B2.mul
    n2 = B2.size
    orders = element_orders(mul)
    gens = generating_set(mul, orders)
    order, parent, via = _word_tree(mul, gens)
    aut_orders = _perm_orders(autB1)
    cands = [np.nonzero(orders[g] % aut_orders == 0)[0] for g in gens]
    commute = [[mul[g, h] == mul[h, g] for h in gens] for g in gens]

    out: list[TauMorphism] = []
    for choice in itertools.product(*cands):
        perms = [autB1[c] for c in choice]
        if any(
            commute[i][j] and not (perms[i][perms[j]] == perms[j][perms[i]]).all()
            for i in range(len(gens))
            for j in range(i)
        ):
            continue
        imgs = np.zeros(n2, dtype=np.int64)
        maps = {0: np.arange(autB1.shape[1])}
        ok = True
        for x in order[1:]:
            m = maps[int(parent[x])][perms[via[x]]]
            k = index.get(perm_key(m))
            if k is None:
                ok = False
                break
            maps[x] = m
            imgs[x] = k
        if not ok:
            continue
        imgs[0] = index[perm_key(np.arange(autB1.shape[1]))]
        tau = TauMorphism(B2, autB1, imgs)
        if tau.is_valid():
            out.append(tau)
    out.sort(key=lambda t: t.key)
    return out


@dataclass
class ClassificationResult:
    classes: list[tuple[TauMorphism, Optional[BraceTable]]]
    orbit_sizes: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.classes)


def tau_classes(taus: Sequence[TauMorphism], autB1: np.ndarray, autB2: np.ndarray) -> ClassificationResult:
    """Orbits of Aut(B1) x Aut(B2) on `taus`, acting by
    (h1, h2)·τ = [b -> h1 τ(h2⁻¹ b) h1⁻¹].  Representatives are the orbit
    members with lexicographically least image vector."""
    taus = list(taus)
    if not taus:
        return ClassificationResult([], [])
    target = taus[0].target_aut
    index = _aut_index(target)
    key_to_i = {t.key: i for i, t in enumerate(taus)}

    moves = []
    for h1 in small_generating_set(np.asarray(autB1)):
        h1inv = inverse_perm(h1)
        conj = np.array([index.get(perm_key(h1[row][h1inv]), -1) for row in target])
        moves.append(("conj", conj))
    for h2 in small_generating_set(np.asarray(autB2)):
        moves.append(("pre", inverse_perm(h2)))

    parent = list(range(len(taus)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, t in enumerate(taus):
        for kind, m in moves:
            new = m[t.images] if kind == "conj" else t.images[m]
            j = key_to_i.get(tuple(int(v) for v in new))
            if j is None:
                raise PreconditionError("the τ list is not closed under the automorphism action")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(taus)):
        groups.setdefault(find(i), []).append(i)
    reps = sorted((min(taus[i].key for i in g), len(g)) for g in groups.values())
    return ClassificationResult([(taus[key_to_i[k]], None) for k, _ in reps], [s for _, s in reps])


# -- semidirect products -----------------------------------------------------


def semidirect_layout(B1: BraceTable, B2: BraceTable):
    """Additive group of B1 x B2 and the map (a + |B1|·b) -> index."""
    factors = list(B1.additive.invariant_factors) + list(B2.additive.invariant_factors)
    G = make_group(factors)
    return G, factors, G.product_map(factors)


def semidirect_brace(B1: BraceTable, B2: BraceTable, tau: TauMorphism, meta: Optional[dict] = None) -> BraceTable:
    """(a,b)+(a',b') = (a+a', b+b'), (a,b)·(a',b') = (a·τ(b)(a'), b·b')."""
    if tau.source is not B2 and (tau.source.size != B2.size or not (tau.source.mul == B2.mul).all()):
        raise PreconditionError("τ is defined on a different brace")
    if tau.target_aut.shape[1] != B1.size or not tau.is_valid():
        raise PreconditionError("τ is not a morphism into the permutations of B1")
    T = tau.target_aut[tau.images]
    for row in np.unique(tau.images):
        h = tau.target_aut[row]
        if not ((h[B1.add] == B1.add[h[:, None], h[None, :]]).all() and (h[B1.mul] == B1.mul[h[:, None], h[None, :]]).all()):
            raise PreconditionError("τ takes a value that is not a brace automorphism of B1")
    G, factors, to_g = semidirect_layout(B1, B2)
    n1, n = B1.size, G.order
    from_g = np.empty(n, dtype=np.int64)
    from_g[to_g] = np.arange(n)
    a, b = from_g % n1, from_g // n1
    first = B1.mul[a[:, None], T[b[:, None], a[None, :]]]
    second = B2.mul[b[:, None], b[None, :]]
    info = {"n1": n1, "n2": B2.size, "factors": factors}
    info.update(meta or {})
    return BraceTable(G, to_g[first + n1 * second], info)


def embeddings(B: BraceTable) -> tuple[np.ndarray, np.ndarray]:
    """Indices of B1 x {0} and {0} x B2 inside an engine-built brace."""
    n1, n2 = B.meta["n1"], B.meta["n2"]
    to_g = B.additive.product_map(B.meta["factors"])
    return to_g[np.arange(n1)], to_g[n1 * np.arange(n2)]


def coprime_identity_holds(B: BraceTable) -> bool:
    """a·b = a + b for a in B1 x {0}, b in {0} x B2."""
    e1, e2 = embeddings(B)
    return bool((B.mul[np.ix_(e1, e2)] == B.add[np.ix_(e1, e2)]).all())


def _label(B: BraceTable, fallback: str) -> str:
    m = B.meta
    return str(m.get("kind") or m.get("family") or m.get("name") or fallback)


def classify_pair(B1: BraceTable, B2: BraceTable, autB1=None, autB2=None) -> ClassificationResult:
    autB1 = brace_automorphisms(B1) if autB1 is None else np.asarray(autB1)
    autB2 = brace_automorphisms(B2) if autB2 is None else np.asarray(autB2)
    result = tau_classes(enumerate_taus(B2, autB1), autB1, autB2)
    built = []
    for tau, _ in result.classes:
        meta = {
            "b1": _label(B1, "B1"),
            "b2": _label(B2, "B2"),
            "tau": [int(v) for v in tau.images],
            "tau_trivial": tau.is_trivial(),
        }
        built.append((tau, semidirect_brace(B1, B2, tau, meta)))
    result.classes = built
    return result


def classify_mn(
    catalog_m: Sequence[BraceTable],
    catalog_n: Sequence[BraceTable],
    normal_subgroup_hypothesis: bool = True,
    certify: bool = True,
) -> list[BraceTable]:
    """Every brace of size mn as a semidirect product B1 ⋊ B2, one per class.

    `normal_subgroup_hypothesis` is the caller's assertion that every
    solvable group of order mn has a normal subgroup of order m.
    """
    catalog_m = [getattr(B, "brace", B) for B in catalog_m]
    catalog_n = [getattr(B, "brace", B) for B in catalog_n]
    if not catalog_m or not catalog_n:
        return []
    ms = {B.size for B in catalog_m}
    ns = {B.size for B in catalog_n}
    if len(ms) != 1 or len(ns) != 1:
        raise PreconditionError("each catalog must hold braces of a single size")
    m, n = ms.pop(), ns.pop()
    if gcd(m, n) != 1:
        raise PreconditionError(f"gcd({m}, {n}) ≠ 1")
    if not normal_subgroup_hypothesis:
        raise PreconditionError("the normal-subgroup hypothesis was not asserted")
    auts1 = [brace_automorphisms(B) for B in catalog_m]
    auts2 = [brace_automorphisms(B) for B in catalog_n]
    out = []
    for B1, A1 in zip(catalog_m, auts1):
        for B2, A2 in zip(catalog_n, auts2):
            out += [B for _, B in classify_pair(B1, B2, A1, A2).classes]
    if certify:
        for i, j in itertools.combinations(range(len(out)), 2):
            if brace_isomorphic(out[i], out[j]):
                raise AssertionError(f"classes {i} and {j} are isomorphic")
    return out
