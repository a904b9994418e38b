"""Compiled inner loops for the O(n³) checks."""

from __future__ import annotations

import numpy as np
from numba import njit

# each kernel returns (a, b, c) of the first violation, or (-1, -1, -1)


@njit(cache=True)
def brace_law_lambda(lam, add):
    n = lam.shape[0]
    for a in range(n):
        la = lam[a]
        for b in range(n):
            lb = la[b]
            for c in range(n):
                if la[add[b, c]] != add[lb, la[c]]:
                    return a, b, c
    return -1, -1, -1


@njit(cache=True)
def associativity_lambda(lam, mul):
    n = lam.shape[0]
    for a in range(n):
        la = lam[a]
        for b in range(n):
            lab = lam[mul[a, b]]
            lb = lam[b]
            for c in range(n):
                if lab[c] != la[lb[c]]:
                    return a, b, c
    return -1, -1, -1


@njit(cache=True)
def associativity_raw(mul):
    n = mul.shape[0]
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    return a, b, c
    return -1, -1, -1


@njit(cache=True)
def brace_law_raw(mul, add):
    n = mul.shape[0]
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if add[mul[a, add[b, c]], a] != add[ab, mul[a, c]]:
                    return a, b, c
    return -1, -1, -1


@njit(cache=True)
def braid(r1, r2):
    """(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r) for r = (r1, r2) tables."""
    n = r1.shape[0]
    for x in range(n):
        for y in range(n):
            a1 = r1[x, y]
            b1 = r2[x, y]
            for z in range(n):
                # left: r12 r23 r12
                b2 = r1[b1, z]
                c2 = r2[b1, z]
                la = r1[a1, b2]
                lb = r2[a1, b2]
                # right: r23 r12 r23
                y1 = r1[y, z]
                z1 = r2[y, z]
                x2 = r1[x, y1]
                y2 = r2[x, y1]
                ry = r1[y2, z1]
                rz = r2[y2, z1]
                if la != x2 or lb != ry or c2 != rz:
                    return x, y, z
    return -1, -1, -1


def as_i32(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int32)
