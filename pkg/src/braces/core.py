"""Left braces stored as Cayley tables over a mixed-radix abelian group."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from . import _kernels
from ._kernels import as_i32
from .abelian import FiniteAbelianGroup, inverse_perm, is_perm
from .errors import InvalidArgument, ResourceLimitError

VERIFY_BOUND = 1000


@dataclass(frozen=True, eq=False)
class BraceTable:
    """A finite left brace (B, +, ·).

    ``mul[a, b]`` is the index of a·b; addition comes from `additive`.
    Element 0 is required to be the identity for both operations.
    """

    additive: FiniteAbelianGroup
    mul: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.additive.order
        mul = np.ascontiguousarray(self.mul, dtype=np.int32)
        if mul.shape != (n, n):
            raise InvalidArgument(f"table shape {mul.shape} does not match |B| = {n}")
        if n and (mul.min() < 0 or mul.max() >= n):
            raise InvalidArgument("table entries out of range")
        ids = np.arange(n)
        if not (mul[0] == ids).all() or not (mul[:, 0] == ids).all():
            raise InvalidArgument("element 0 must be the multiplicative identity")
        mul.flags.writeable = False
        object.__setattr__(self, "mul", mul)

    def __repr__(self):
        fam = self.meta.get("family") or self.meta.get("kind") or "brace"
        return f"<BraceTable {fam} on {self.additive}>"

    @property
    def size(self) -> int:
        return self.additive.order

    @cached_property
    def add(self) -> np.ndarray:
        return self.additive.add_table

    @cached_property
    def neg(self) -> np.ndarray:
        return self.additive.neg_table

    @cached_property
    def lam(self) -> np.ndarray:
        """lam[a, b] = -a + a·b."""
        a = np.arange(self.size)
        return self.add[self.neg[a][:, None], self.mul]

    @cached_property
    def mul_inverse(self) -> np.ndarray:
        """Multiplicative inverses (requires every row to be a permutation)."""
        hits = np.argwhere(self.mul == 0)
        inv = np.full(self.size, -1, dtype=np.int64)
        inv[hits[:, 0]] = hits[:, 1]
        return inv

    def is_trivial(self) -> bool:
        return bool((self.mul == self.add).all())

    def element(self, *coords: int) -> int:
        return self.additive.encode(coords)


def make_trivial_brace(G: FiniteAbelianGroup, meta: Optional[dict] = None) -> BraceTable:
    return BraceTable(G, G.add_table, dict(meta or {"kind": "trivial"}))


def law_table(G: FiniteAbelianGroup, factors, law: Callable) -> np.ndarray:
    """Tabulate a binary law given on product coordinates.

    `law` receives two tuples of coordinate arrays (one array per factor of
    `factors`) and returns the tuple of result coordinates; all arrays
    broadcast over the full n x n grid.  Rows and columns are indexed by
    the canonical encoding of `G`.
    """
    factors = list(factors)
    n = G.order
    pos = np.arange(n, dtype=np.int64)
    cols = []
    for f in factors:
        cols.append(pos % f)
        pos = pos // f
    # product position -> group index, and back
    to_group = G.product_map(factors)
    from_group = np.empty(n, dtype=np.int64)
    from_group[to_group] = np.arange(n)
    x = tuple(c[from_group][:, None] for c in cols)
    y = tuple(c[from_group][None, :] for c in cols)
    out = law(x, y)
    flat = np.zeros((n, n), dtype=np.int64)
    weight = 1
    for f, c in zip(factors, out):
        flat += (np.asarray(c) % f) * weight
        weight *= f
    return to_group[flat].astype(np.int32)


def brace_from_law(G: FiniteAbelianGroup, factors, law: Callable, meta: Optional[dict] = None) -> BraceTable:
    """Brace on `G` whose multiplication is `law` in product coordinates
    (see `law_table`)."""
    return BraceTable(G, law_table(G, factors, law), dict(meta or {}))


# -- verification -------------------------------------------------------------


@dataclass
class VerifyReport:
    is_brace: bool
    first_violation: Optional[tuple[int, int, int]] = None
    kind: Optional[str] = None
    checked_triples: int = 0
    sampled: bool = False

    def __bool__(self):
        return self.is_brace


def _row_violation(mul: np.ndarray) -> Optional[tuple[int, int, int]]:
    """(a, b, c) with a·b = a·c and b ≠ c for the first row a that is not a
    bijection, or None when every row is."""
    n = len(mul)
    bad_rows = np.nonzero((np.sort(mul, axis=1) != np.arange(n)[None, :]).any(axis=1))[0]
    if not len(bad_rows):
        return None
    a = int(bad_rows[0])
    row = mul[a]
    _, first_idx, counts = np.unique(row, return_index=True, return_counts=True)
    dup = np.nonzero(counts > 1)[0]
    b = int(first_idx[dup[0]])
    c = int(np.nonzero(row == row[b])[0][1])
    return a, b, c


def verify_brace(B: BraceTable, paranoid: bool = False) -> VerifyReport:
    """Exhaustively check the group and left-brace axioms.

    Uses the λ formulation: every λ_a bijective and additive, and
    λ_{a·b} = λ_a ∘ λ_b.  With ``paranoid`` the raw triple checks of
    associativity and a·(b+c)+a = a·b+a·c run as well.
    """
    n = B.size
    if n > VERIFY_BOUND:
        raise ResourceLimitError(f"|B| = {n} exceeds the exhaustive bound {VERIFY_BOUND}")
    mul, add, lam = B.mul, B.add, B.lam
    ids = np.arange(n)

    bad = _row_violation(mul)
    if bad is not None:
        return VerifyReport(False, bad, "row-not-bijective", 0)

    lam32, add32, mul32 = as_i32(lam), as_i32(add), as_i32(mul)
    checks = [
        ("brace-law", lambda: _kernels.brace_law_lambda(lam32, add32)),
        ("associativity", lambda: _kernels.associativity_lambda(lam32, mul32)),
    ]
    if paranoid:
        checks += [
            ("associativity-raw", lambda: _kernels.associativity_raw(mul32)),
            ("brace-law-raw", lambda: _kernels.brace_law_raw(mul32, add32)),
        ]
    for done, (kind, run) in enumerate(checks):
        hit = run()
        if hit[0] >= 0:
            return VerifyReport(False, tuple(int(v) for v in hit), kind, (done + 1) * n**3)
    return VerifyReport(True, None, None, (4 if paranoid else 2) * n**3)


def verify_brace_sampled(B: BraceTable, triples: int = 1_000_000, seed: int = 0, batch: int = 200_000) -> VerifyReport:
    """Random-triple check of associativity and the brace law."""
    n = B.size
    rng = np.random.default_rng(seed)
    mul, G = B.mul, B.additive
    add = G.add_table if n <= 4096 else None

    def plus(x, y):
        return add[x, y] if add is not None else G.add(x, y)

    done = 0
    while done < triples:
        k = min(batch, triples - done)
        a, b, c = (rng.integers(0, n, k) for _ in range(3))
        assoc = mul[mul[a, b], c] != mul[a, mul[b, c]]
        law = plus(mul[a, plus(b, c)], a) != plus(mul[a, b], mul[a, c])
        for mask, kind in ((assoc, "associativity"), (law, "brace-law")):
            if mask.any():
                i = int(np.argmax(mask))
                return VerifyReport(False, (int(a[i]), int(b[i]), int(c[i])), kind, done + k, True)
        done += k
    # bijectivity of rows is cheap enough to check in full
    bad = _row_violation(mul)
    if bad is not None:
        return VerifyReport(False, bad, "row-not-bijective", done, True)
    return VerifyReport(True, None, None, done, True)


def lambda_map(B: BraceTable, a: int) -> np.ndarray:
    """The permutation b -> -a + a·b."""
    if not 0 <= a < B.size:
        raise InvalidArgument(f"element {a} out of range")
    return B.lam[a].astype(np.int64)


# -- maps ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BraceMap:
    source: BraceTable
    target: BraceTable
    images: np.ndarray

    def __post_init__(self):
        imgs = np.asarray(self.images, dtype=np.int64)
        if imgs.shape != (self.source.size,):
            raise InvalidArgument("image array has the wrong length")
        object.__setattr__(self, "images", imgs)

    def __call__(self, x):
        return self.images[x]

    def is_additive(self) -> bool:
        f, A, B = self.images, self.source.add, self.target.add
        return bool((f[A] == B[f[:, None], f[None, :]]).all())

    def is_multiplicative(self) -> bool:
        f, A, B = self.images, self.source.mul, self.target.mul
        return bool((f[A] == B[f[:, None], f[None, :]]).all())

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and is_perm(self.images)

    def is_brace_morphism(self) -> bool:
        return self.is_additive() and self.is_multiplicative()

    def is_isomorphism(self) -> bool:
        return self.is_bijective() and self.is_brace_morphism()

    def inverse(self) -> "BraceMap":
        return BraceMap(self.target, self.source, inverse_perm(self.images))


# -- JSON ---------------------------------------------------------------------


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def brace_to_json(B: BraceTable) -> dict:
    return {
        "size": B.size,
        "additive": {"invariant_factors": list(B.additive.invariant_factors)},
        "mul": B.mul.tolist(),
        "meta": _plain(B.meta),
    }


def brace_from_json(obj: dict) -> BraceTable:
    try:
        G = FiniteAbelianGroup(tuple(int(d) for d in obj["additive"]["invariant_factors"]))
        mul = np.array(obj["mul"], dtype=np.int64)
        size = int(obj["size"])
        meta = dict(obj.get("meta") or {})
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed brace JSON: {exc}") from exc
    if size != G.order:
        raise InvalidArgument(f"size {size} does not match the additive group order {G.order}")
    return BraceTable(G, mul, meta)


def save_brace(B: BraceTable, path) -> None:
    Path(path).write_text(json.dumps(brace_to_json(B), separators=(",", ":"), sort_keys=True))


def load_brace(path) -> BraceTable:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: not valid JSON ({exc})") from exc
    return brace_from_json(obj)
