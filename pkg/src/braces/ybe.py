"""Set-theoretic solutions of the Yang–Baxter equation attached to braces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from ._kernels import as_i32
from .abelian import inverse_perm, is_perm
from .core import BraceTable


@dataclass(frozen=True, eq=False)
class YbeSolution:
    """r(x, y) = (r1[x, y], r2[x, y]) on {0, ..., n-1}."""

    r1: np.ndarray
    r2: np.ndarray

    @property
    def n(self) -> int:
        return len(self.r1)

    def __call__(self, x, y):
        return self.r1[x, y], self.r2[x, y]

    def is_involutive(self) -> bool:
        x, y = np.indices((self.n, self.n))
        u, v = self(x, y)
        u2, v2 = self(u, v)
        return bool((u2 == x).all() and (v2 == y).all())

    def is_nondegenerate(self) -> bool:
        rows = all(is_perm(self.r1[x]) for x in range(self.n))
        cols = all(is_perm(self.r2[:, y]) for y in range(self.n))
        return rows and cols

    def to_json(self) -> dict:
        return {"n": self.n, "r": np.stack([self.r1, self.r2], axis=-1).tolist()}


@dataclass
class BraidReport:
    holds: bool
    witness: Optional[tuple[int, int, int]] = None
    checked_triples: int = 0
    sampled: bool = False

    def __bool__(self):
        return self.holds


def flip(n: int) -> YbeSolution:
    x, y = np.indices((n, n))
    return YbeSolution(y, x)


def brace_to_ybe(B: BraceTable) -> YbeSolution:
    """r(x, y) = (λ_x(y), λ_x(y)⁻¹ · x · y), inverse taken in (B, ·)."""
    lam = B.lam.astype(np.int64)
    inv = B.mul_inverse
    r2 = B.mul[inv[lam], B.mul]
    return YbeSolution(lam, r2.astype(np.int64))


def verify_braid(S: YbeSolution, sample: Optional[int] = None, seed: int = 0) -> BraidReport:
    """(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r), exhaustively or on
    `sample` random triples."""
    n = S.n
    if sample is None:
        hit = _kernels.braid(as_i32(S.r1), as_i32(S.r2))
        if hit[0] >= 0:
            return BraidReport(False, tuple(int(v) for v in hit), n**3)
        return BraidReport(True, None, n**3)
    rng = np.random.default_rng(seed)
    x, y, z = (rng.integers(0, n, sample) for _ in range(3))
    r1, r2 = S.r1, S.r2
    a1, b1 = r1[x, y], r2[x, y]
    b2, c2 = r1[b1, z], r2[b1, z]
    la, lb = r1[a1, b2], r2[a1, b2]
    y1, z1 = r1[y, z], r2[y, z]
    x2, y2 = r1[x, y1], r2[x, y1]
    ry, rz = r1[y2, z1], r2[y2, z1]
    bad = (la != x2) | (lb != ry) | (c2 != rz)
    if bad.any():
        i = int(np.argmax(bad))
        return BraidReport(False, (int(x[i]), int(y[i]), int(z[i])), sample, True)
    return BraidReport(True, None, sample, True)


def conjugate(S: YbeSolution, f: np.ndarray) -> YbeSolution:
    """The solution (f×f) ∘ r ∘ (f⁻¹×f⁻¹)."""
    f = np.asarray(f, dtype=np.int64)
    g = inverse_perm(f)
    r1 = f[S.r1[g[:, None], g[None, :]]]
    r2 = f[S.r2[g[:, None], g[None, :]]]
    return YbeSolution(r1, r2)


def same_solution(S: YbeSolution, T: YbeSolution) -> bool:
    return S.n == T.n and bool((S.r1 == T.r1).all() and (S.r2 == T.r2).all())
