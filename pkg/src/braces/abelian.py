"""Finite abelian groups in mixed-radix encoding, permutations, automorphisms.

An element of ``Z/d1 x ... x Z/dk`` (invariant factors d1 | d2 | ... | dk) is
stored as the integer ``x1 + d1*(x2 + d2*(x3 + ...))``; the identity is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import prod
from typing import Sequence

import numpy as np

from .arith import crt_idempotent, factorize
from .errors import InvalidArgument, ResourceLimitError

ENUMERATION_BOUND = 10_000
# Upper bound on |Aut(G)| * |G| materialised by abelian_automorphisms.
AUTOMORPHISM_CELLS = 60_000_000


def _primary_components(factors: Sequence[int]) -> list[tuple[int, int, int]]:
    """(prime, exponent, source position) for every primary cyclic piece."""
    comps = []
    for pos, f in enumerate(factors):
        for prime, e in sorted(factorize(f).items()):
            comps.append((prime, e, pos))
    return comps


def _slot_layout(factors: Sequence[int]):
    """Assign primary pieces of `factors` to invariant-factor slots.

    Returns (invariant_factors, assignment) where assignment lists
    (slot, prime_power, source position) triples.
    """
    by_prime: dict[int, list[tuple[int, int]]] = {}
    for prime, e, pos in _primary_components(factors):
        by_prime.setdefault(prime, []).append((e, pos))
    k = max((len(v) for v in by_prime.values()), default=0)
    slots = [1] * k
    assignment = []
    for prime in sorted(by_prime):
        # largest exponents go to the last slots; ties keep source order
        pieces = sorted(by_prime[prime], key=lambda t: (-t[0], -t[1]))
        for j, (e, pos) in enumerate(pieces):
            slot = k - 1 - j
            slots[slot] *= prime**e
            assignment.append((slot, prime**e, pos))
    return tuple(slots), assignment


def normalize_factors(factors: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors d1 | ... | dk of Z/f1 x ... x Z/fm."""
    return _slot_layout(factors)[0]


def make_group(factors: Sequence[int]) -> "FiniteAbelianGroup":
    factors = [int(f) for f in factors]
    bad = [f for f in factors if f < 2]
    if bad:
        raise InvalidArgument(f"cyclic factors must be >= 2, got {bad}")
    return FiniteAbelianGroup(normalize_factors(factors))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        d = self.invariant_factors
        if any(f < 2 for f in d):
            raise InvalidArgument(f"invariant factors must be >= 2: {d}")
        if any(d[i + 1] % d[i] for i in range(len(d) - 1)):
            raise InvalidArgument(f"not a divisibility chain: {d}")

    def __repr__(self):
        if not self.invariant_factors:
            return "Z/1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @cached_property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @cached_property
    def _weights(self) -> np.ndarray:
        w = np.ones(self.rank, dtype=np.int64)
        for i in range(1, self.rank):
            w[i] = w[i - 1] * self.invariant_factors[i - 1]
        return w

    @cached_property
    def _moduli(self) -> np.ndarray:
        return np.array(self.invariant_factors, dtype=np.int64)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise InvalidArgument(f"expected {self.rank} coordinates, got {len(coords)}")
        idx = 0
        for c, d, w in zip(coords, self.invariant_factors, self._weights):
            idx += (int(c) % d) * int(w)
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        out = []
        for d in self.invariant_factors:
            out.append(index % d)
            index //= d
        return tuple(out)

    @cached_property
    def coords(self) -> np.ndarray:
        """(order, rank) array of the coordinates of every element."""
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // self._weights[None, :]) % self._moduli[None, :]

    def from_coords(self, coords: np.ndarray) -> np.ndarray:
        """Vectorised encode of an (..., rank) integer array."""
        return ((np.asarray(coords) % self._moduli) * self._weights).sum(axis=-1)

    def add(self, a, b):
        return self.from_coords(self.coords[a] + self.coords[b])

    def neg(self, a):
        return self.from_coords(-self.coords[a])

    def scale(self, a, m):
        """m * a."""
        return self.from_coords(self.coords[a] * np.asarray(m)[..., None])

    @cached_property
    def add_table(self) -> np.ndarray:
        n = self.order
        a = np.arange(n)
        return self.add(a[:, None], a[None, :]).astype(np.int32)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.neg(np.arange(self.order)).astype(np.int32)

    @cached_property
    def element_orders(self) -> np.ndarray:
        c = self.coords
        d = self._moduli[None, :]
        each = d // np.gcd(c, d)
        return np.lcm.reduce(each, axis=1) if self.rank else np.ones(1, dtype=np.int64)

    @cached_property
    def basis(self) -> list[int]:
        """Generators of the cyclic invariant factors, in order."""
        return [self.encode([1 if j == i else 0 for j in range(self.rank)]) for i in range(self.rank)]

    @cached_property
    def primes(self) -> list[int]:
        return sorted(factorize(self.order)) if self.order > 1 else []

    def primary_factors(self, prime: int) -> tuple[int, ...]:
        out = []
        for d in self.invariant_factors:
            e = factorize(d).get(prime, 0)
            if e:
                out.append(prime**e)
        return tuple(out)

    def primary_part(self, prime: int) -> tuple["FiniteAbelianGroup", np.ndarray]:
        """The `prime`-primary subgroup and its embedding as an index array."""
        sub = FiniteAbelianGroup(self.primary_factors(prime))
        k0 = self.rank - sub.rank
        full = np.zeros((sub.order, self.rank), dtype=np.int64)
        for j, pp in enumerate(sub.invariant_factors):
            slot = k0 + j
            full[:, slot] = sub.coords[:, j] * (self.invariant_factors[slot] // pp)
        return sub, self.from_coords(full)

    def projection(self, prime: int) -> np.ndarray:
        """x -> (prime-primary component of x), as an index array."""
        c = self.coords.copy()
        for j, d in enumerate(self.invariant_factors):
            pp = prime ** factorize(d).get(prime, 0)
            c[:, j] = c[:, j] * crt_idempotent(pp, d)
        return self.from_coords(c)

    @cached_property
    def _product_maps(self) -> dict:
        return {}

    def product_map(self, factors: Sequence[int]) -> np.ndarray:
        key = tuple(int(f) for f in factors)
        if key not in self._product_maps:
            self._product_maps[key] = self._build_product_map(key)
        return self._product_maps[key]

    def _build_product_map(self, factors: Sequence[int]) -> np.ndarray:
        """Isomorphism Z/f1 x ... x Z/fm -> self as an index array.

        Position ``x1 + f1*(x2 + ...)`` of the result holds the encoding of
        (x1, ..., xm).  The factors must normalise to this group.
        """
        inv, assignment = _slot_layout(list(factors))
        if inv != self.invariant_factors:
            raise InvalidArgument(f"{list(factors)} does not normalise to {self}")
        m = len(factors)
        total = prod(factors)
        idx = np.arange(total, dtype=np.int64)
        src = np.empty((total, m), dtype=np.int64)
        for i, f in enumerate(factors):
            src[:, i] = idx % f
            idx //= f
        out = np.zeros((total, self.rank), dtype=np.int64)
        for slot, pp, pos in assignment:
            d = self.invariant_factors[slot]
            out[:, slot] += (src[:, pos] % pp) * crt_idempotent(pp, d)
        return self.from_coords(out)

    def subgroup_order_dividing(self, m: int) -> np.ndarray:
        """Indices of elements x with m*x = 0."""
        return np.nonzero(m % self.element_orders == 0)[0]


# -- permutations -------------------------------------------------------------
# A permutation of range(n) is an int array `p` with p[i] the image of i.
# Composition follows maps: compose(f, g)[i] = f[g[i]].


def identity_perm(n: int) -> np.ndarray:
    return np.arange(n)


def is_perm(p) -> bool:
    p = np.asarray(p)
    n = len(p)
    return bool(((p >= 0) & (p < n)).all()) and len(np.unique(p)) == n


def compose(f, g) -> np.ndarray:
    return np.asarray(f)[np.asarray(g)]


def inverse_perm(p) -> np.ndarray:
    p = np.asarray(p)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


def perm_key(p) -> bytes:
    return np.asarray(p, dtype=np.int32).tobytes()


# -- automorphisms ------------------------------------------------------------


def automorphism_count(G: FiniteAbelianGroup) -> int:
    """|Aut(G)| in closed form (product over primary parts)."""
    total = 1
    for prime in G.primes:
        es = sorted(factorize(pp)[prime] for pp in G.primary_factors(prime))
        k = len(es)
        # 1-indexed d_j = max{l: e_l = e_j}, c_j = min{l: e_l = e_j}
        d = [max(l + 1 for l in range(k) if es[l] == es[j]) for j in range(k)]
        c = [min(l + 1 for l in range(k) if es[l] == es[j]) for j in range(k)]
        part = 1
        for j in range(k):
            part *= prime ** d[j] - prime**j
            part *= (prime ** es[j]) ** (k - d[j])
            part *= (prime ** (es[j] - 1)) ** (k - c[j] + 1)
        total *= part
    return total


def _basis_image_matrices(G: FiniteAbelianGroup) -> list[np.ndarray]:
    """All rank x rank coordinate matrices C whose rows (images of the basis)
    generate G independently; backtracking on one basis vector at a time."""
    d = G.invariant_factors
    k = G.rank
    orders = G.element_orders
    coords = G.coords
    results: list[np.ndarray] = []

    def extend(rows: list[np.ndarray], span: np.ndarray):
        i = len(rows)
        if i == k:
            results.append(np.array(rows, dtype=np.int64))
            return
        di = d[i]
        cand = np.nonzero(orders == di)[0]
        span_mask = np.zeros(G.order, dtype=bool)
        span_mask[span] = True
        mult = np.arange(1, di)
        for g in cand:
            multiples = G.scale(np.full(di - 1, g), mult)
            if span_mask[multiples].any():
                continue
            all_mult = np.concatenate(([0], multiples))
            new_span = G.add(span[:, None], all_mult[None, :]).ravel()
            extend(rows + [coords[g]], new_span)

    extend([], np.zeros(1, dtype=np.int64))
    return results


def _primary_automorphisms(G: FiniteAbelianGroup) -> np.ndarray:
    mats = np.stack(_basis_image_matrices(G))
    # image of x with coordinates X is X @ C reduced mod the invariant factors
    imgs = np.einsum("ni,kij->knj", G.coords, mats)
    return G.from_coords(imgs)


def abelian_automorphisms(G: FiniteAbelianGroup) -> np.ndarray:
    """Every automorphism of (G, +) as a row of a (|Aut|, |G|) array.

    Aut(G) is assembled from the automorphisms of the primary parts.  Rows
    are sorted lexicographically, so row 0 is the identity.
    """
    if G.order > ENUMERATION_BOUND:
        raise ResourceLimitError(f"|G| = {G.order} exceeds the bound {ENUMERATION_BOUND}")
    if G.order == 1:
        return np.zeros((1, 1), dtype=np.int64)
    count = automorphism_count(G)
    if count * G.order > AUTOMORPHISM_CELLS:
        raise ResourceLimitError(f"|Aut({G})| = {count} is too large to enumerate")
    add = G.add_table
    perms = np.zeros((1, G.order), dtype=np.int32)
    for prime in G.primes:
        sub, emb = G.primary_part(prime)
        to_sub = np.full(G.order, -1, dtype=np.int64)
        to_sub[emb] = np.arange(sub.order)
        local = emb[_primary_automorphisms(sub)][:, to_sub[G.projection(prime)]]
        perms = add[perms[:, None, :], local[None, :, :]].reshape(-1, G.order)
    assert len(perms) == count, (len(perms), count)
    order = np.lexsort(perms.T[::-1])
    return perms[order].astype(np.int64)


def perm_group_closed(perms: np.ndarray) -> bool:
    """Whether a set of permutations (rows) is closed under composition and inverse."""
    keys = {perm_key(p) for p in perms}
    for f in perms:
        if perm_key(inverse_perm(f)) not in keys:
            return False
        for g in perms:
            if perm_key(f[g]) not in keys:
                return False
    return True


def generate_perm_group(gens: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Closure of a set of permutations under composition (rows sorted)."""
    ident = identity_perm(n)
    seen = {perm_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = np.asarray(g)[f]
                key = perm_key(h)
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
        frontier = nxt
    out = np.array(list(seen.values()))
    return out[np.lexsort(out.T[::-1])]


def small_generating_set(perms: np.ndarray) -> list[np.ndarray]:
    """Greedy generating set of the group formed by the rows of `perms`."""
    n = perms.shape[1]
    target = len(perms)
    gens: list[np.ndarray] = []
    have = {perm_key(identity_perm(n))}
    for p in perms:
        if perm_key(p) in have:
            continue
        gens.append(p)
        have = {perm_key(x) for x in generate_perm_group(gens, n)}
        if len(have) == target:
            break
    return gens


def coordinates_tuple(G: FiniteAbelianGroup, factors: Sequence[int], values: Sequence[int]) -> int:
    """Index of the element with product coordinates `values` over `factors`."""
    pos = reduce(lambda acc, t: acc * t[1] + t[0] % t[1], zip(reversed(values), reversed(factors)), 0)
    return int(G.product_map(factors)[pos])
