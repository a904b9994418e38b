"""Brute-force enumeration of braces on a finite abelian group.

A brace on (G, +) is the same thing as a regular subgroup of the holomorph
Hol(G) = G ⋊ Aut(G): the brace gives {(b, λ_b)}, and a regular subgroup S
gives a·b = a + λ_a(b) where (a, λ_a) is the element of S over a.  Two
braces are isomorphic exactly when their subgroups are conjugate under
Aut(G).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .abelian import FiniteAbelianGroup, abelian_automorphisms, inverse_perm, perm_key, small_generating_set
from .core import BraceTable, verify_brace
from .errors import ResourceLimitError
from .iso import brace_isomorphic

HOL_BOUND = 100_000


@dataclass(eq=False)
class HolomorphGroup:
    """Hol(G); an element is a pair (g, k) with k indexing ``aut``."""

    base: FiniteAbelianGroup
    aut: np.ndarray
    _index: dict = field(default_factory=dict, repr=False)
    _comp: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.aut = np.asarray(self.aut, dtype=np.int64)
        self._index = {perm_key(r): i for i, r in enumerate(self.aut)}
        self.identity_aut = self._index[perm_key(np.arange(self.base.order))]

    @classmethod
    def of(cls, G: FiniteAbelianGroup) -> "HolomorphGroup":
        return cls(G, abelian_automorphisms(G))

    @property
    def order(self) -> int:
        return self.base.order * len(self.aut)

    @property
    def identity(self) -> tuple[int, int]:
        return 0, self.identity_aut

    def compose(self, k: int, j: int) -> int:
        """Index of aut[k] ∘ aut[j]."""
        out = self._comp.get((k, j))
        if out is None:
            out = self._index[perm_key(self.aut[k][self.aut[j]])]
            self._comp[(k, j)] = out
        return out

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        """(g, φ)·(g', φ') = (g + φ(g'), φ∘φ')."""
        (g, k), (h, j) = x, y
        return int(self.base.add(g, self.aut[k][h])), self.compose(k, j)

    def conjugation(self, phi: np.ndarray) -> np.ndarray:
        """ψ -> φψφ⁻¹ as a map on aut indices."""
        inv = inverse_perm(phi)
        return np.array([self._index[perm_key(phi[r][inv])] for r in self.aut])


def _close(H: HolomorphGroup, gens: list[tuple[int, int]]) -> Optional[np.ndarray]:
    """The subgroup generated by `gens` as an array g -> aut index (-1 where
    no element lies over g), or None if two elements lie over the same g."""
    n = H.base.order
    over = np.full(n, -1, dtype=np.int64)
    over[0] = H.identity_aut
    queue = [H.identity]
    while queue:
        x = queue.pop()
        for s in gens:
            g, k = H.mul(x, s)
            if over[g] < 0:
                over[g] = k
                queue.append((g, k))
            elif over[g] != k:
                return None
    return over


def regular_subgroups(H: HolomorphGroup) -> list[np.ndarray]:
    """Every regular subgroup, each found once: the search always lifts the
    smallest element of G not yet covered."""
    n, K = H.base.order, len(H.aut)
    found: list[np.ndarray] = []

    def extend(gens, over):
        free = np.nonzero(over < 0)[0]
        if len(free) == 0:
            found.append(over)
            return
        g = int(free[0])
        for k in range(K):
            nxt = _close(H, gens + [(g, k)])
            if nxt is not None:
                extend(gens + [(g, k)], nxt)

    extend([], _close(H, []))
    return found


def subgroup_to_brace(H: HolomorphGroup, over: np.ndarray, meta: Optional[dict] = None) -> BraceTable:
    G = H.base
    lam = H.aut[over]  # lam[a] = λ_a
    mul = G.add_table[np.arange(G.order)[:, None], lam]
    return BraceTable(G, mul, dict(meta or {}))


def brace_to_subgroup(H: HolomorphGroup, B: BraceTable) -> np.ndarray:
    """{(b, λ_b)} as an array b -> aut index."""
    return np.array([H._index[perm_key(row)] for row in B.lam])


def _orbit_reps(H: HolomorphGroup, subgroups: list[np.ndarray]) -> list[np.ndarray]:
    """Least member (as a tuple) of each Aut(G)-conjugacy orbit."""
    keys = [tuple(int(v) for v in s) for s in subgroups]
    pos = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(keys)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for phi in small_generating_set(H.aut):
        conj = H.conjugation(phi)
        for i, s in enumerate(subgroups):
            moved = np.empty_like(s)
            moved[phi] = conj[s]
            a, b = find(i), find(pos[tuple(int(v) for v in moved)])
            if a != b:
                parent[max(a, b)] = min(a, b)
    reps: dict[int, tuple] = {}
    for i, k in enumerate(keys):
        r = find(i)
        reps[r] = min(reps.get(r, k), k)
    return [np.array(k) for k in sorted(reps.values())]


def braces_on(G: FiniteAbelianGroup, bound: int = HOL_BOUND) -> list[BraceTable]:
    """One brace per isomorphism class with additive group G."""
    H = HolomorphGroup.of(G)
    if H.order > bound:
        raise ResourceLimitError(f"|Hol(G)| = {H.order} exceeds the bound {bound}")
    subs = regular_subgroups(H)
    out = []
    for i, s in enumerate(_orbit_reps(H, subs)):
        B = subgroup_to_brace(H, s, {"source": "oracle", "group": list(G.invariant_factors), "class": i})
        report = verify_brace(B)
        if not report:
            raise AssertionError(f"regular subgroup {i} gave a non-brace: {report.kind} at {report.first_violation}")
        out.append(B)
    return out


@dataclass
class MatchReport:
    pairs: list[tuple[int, int]]
    unmatched_oracle: list[int]
    unmatched_catalog: list[int]
    not_braces: list[int] = field(default_factory=list)  # catalog entries failing the axioms

    @property
    def perfect(self) -> bool:
        return not self.unmatched_oracle and not self.unmatched_catalog

    def __bool__(self):
        return self.perfect


def oracle_match(oracle_list: Sequence[BraceTable], catalog_list: Sequence[BraceTable]) -> MatchReport:
    """Maximum matching of the two lists under brace isomorphism."""
    catalog_list = [getattr(B, "brace", B) for B in catalog_list]
    bad = [j for j, B in enumerate(catalog_list) if not verify_brace(B)]
    edges = [
        [j for j, C in enumerate(catalog_list) if j not in bad and brace_isomorphic(A, C)] for A in oracle_list
    ]
    match_c: dict[int, int] = {}

    def augment(i, seen):
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_c or augment(match_c[j], seen):
                match_c[j] = i
                return True
        return False

    for i in range(len(oracle_list)):
        augment(i, set())
    pairs = sorted((i, j) for j, i in match_c.items())
    return MatchReport(
        pairs=pairs,
        unmatched_oracle=[i for i in range(len(oracle_list)) if i not in match_c.values()],
        unmatched_catalog=[j for j in range(len(catalog_list)) if j not in match_c],
        not_braces=bad,
    )
