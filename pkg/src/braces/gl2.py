"""2x2 matrices over Z/q and the order-p subgroups of GL(2, q)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arith import is_prime, smallest_element_of_order
from .errors import InvalidArgument, PreconditionError

GL2_BRUTE_FORCE_MAX_Q = 13


@dataclass(frozen=True)
class Mat2:
    """[[a, b], [c, d]] with entries reduced mod q."""

    a: int
    b: int
    c: int
    d: int
    q: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.q)

    @classmethod
    def diag(cls, x: int, y: int, q: int) -> "Mat2":
        return cls(x, 0, 0, y, q)

    @classmethod
    def identity(cls, q: int) -> "Mat2":
        return cls(1, 0, 0, 1, q)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.q

    def __matmul__(self, other: "Mat2") -> "Mat2":
        if other.q != self.q:
            raise InvalidArgument("moduli differ")
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.q)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Mat2.identity(self.q), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def inverse(self) -> "Mat2":
        if self.det == 0:
            raise InvalidArgument("singular matrix")
        inv = pow(self.det, -1, self.q)
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, self.q)

    def order(self) -> int:
        if self.det == 0:
            raise InvalidArgument("singular matrix")
        k, m = 1, self
        one = Mat2.identity(self.q)
        while m != one:
            m = m @ self
            k += 1
        return k

    def apply(self, x, y):
        """Action on column vectors; works elementwise on arrays."""
        return (self.a * x + self.b * y) % self.q, (self.c * x + self.d * y) % self.q

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def hypothesis_violations(p: int, q: int) -> list[str]:
    """The conditions on (p, q) that fail; empty when all hold."""
    bad = []
    if not is_prime(p):
        bad.append(f"p = {p} is not prime")
    if not is_prime(q):
        bad.append(f"q = {q} is not prime")
    if not q > p:
        bad.append("q ≤ p")
    if not p > 2:
        bad.append("p ≤ 2")
    if not q >= 5:
        bad.append("q < 5")
    if (q - 1) % p != 0:
        bad.append("p ∤ q−1")
    if (q + 1) % p == 0:
        bad.append("p | q+1")
    if (q - 1) % (p * p) == 0:
        bad.append("p² | q−1")
    return bad


def check_hypothesis(p: int, q: int) -> None:
    bad = hypothesis_violations(p, q)
    if bad:
        raise PreconditionError(f"(p, q) = ({p}, {q}) violates the hypothesis: " + "; ".join(bad))


def canonical_lambda(p: int, q: int) -> int:
    """Smallest integer > 1 of multiplicative order exactly p mod q."""
    return smallest_element_of_order(p, q)


def k_representatives(p: int) -> list[int]:
    """One k per pair {k, 1/k} in (Z/p)* minus {1, -1}; the smaller is kept."""
    reps = []
    for k in range(2, p - 1):
        if k <= pow(k, -1, p):
            reps.append(k)
    return reps


def order_p_exponent_pairs(p: int) -> list[tuple[int, int]]:
    """Exponents (e1, e2) of the representatives diag(λ^e1, λ^e2), in list order:
    diag(1,λ), diag(λ,λ), diag(λ,λ^-1), then diag(λ,λ^k)."""
    return [(0, 1), (1, 1), (1, p - 1)] + [(1, k) for k in k_representatives(p)]


def gl2_order_p_subgroups(p: int, q: int) -> list[Mat2]:
    """Generators of representatives of the conjugacy classes of order-p
    subgroups of GL(2, q)."""
    check_hypothesis(p, q)
    lam = canonical_lambda(p, q)
    mats = [Mat2.diag(pow(lam, e1, q), pow(lam, e2, q), q) for e1, e2 in order_p_exponent_pairs(p)]
    assert len(mats) == (p + 3) // 2
    return mats


# -- brute force over GL(2, q) -------------------------------------------------


def _all_gl2(q: int) -> np.ndarray:
    e = np.array(np.meshgrid(*[np.arange(q)] * 4, indexing="ij")).reshape(4, -1).T
    det = (e[:, 0] * e[:, 3] - e[:, 1] * e[:, 2]) % q
    return e[det != 0]


def _matmul(x: np.ndarray, y: np.ndarray, q: int) -> np.ndarray:
    a, b, c, d = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    e, f, g, h = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    return np.stack([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], axis=-1) % q


def _inv(x: np.ndarray, q: int) -> np.ndarray:
    det = (x[..., 0] * x[..., 3] - x[..., 1] * x[..., 2]) % q
    inv_table = np.array([0] + [pow(int(v), -1, q) for v in range(1, q)])
    di = inv_table[det]
    return np.stack([x[..., 3] * di, -x[..., 1] * di, -x[..., 2] * di, x[..., 0] * di], axis=-1) % q


def _code(x: np.ndarray, q: int) -> np.ndarray:
    return ((x[..., 0] * q + x[..., 1]) * q + x[..., 2]) * q + x[..., 3]


@dataclass
class Gl2LemmaReport:
    p: int
    q: int
    group_order: int
    order_p_elements: int
    order_p_subgroups: int
    classes: int
    class_sizes: list[int]
    expected_classes: int
    representatives_distinct: bool
    representatives_cover: bool
    match: bool
    representatives: list[tuple[int, int, int, int]] = field(default_factory=list)


def verify_gl2_lemma(p: int, q: int) -> Gl2LemmaReport:
    """Classify order-p subgroups of GL(2, q) by brute-force conjugation and
    compare with gl2_order_p_subgroups."""
    if q > GL2_BRUTE_FORCE_MAX_Q:
        raise PreconditionError(f"brute force limited to q <= {GL2_BRUTE_FORCE_MAX_Q}")
    reps = gl2_order_p_subgroups(p, q)
    G = _all_gl2(q)
    ident = np.array([1, 0, 0, 1])
    powers = [np.broadcast_to(ident, G.shape)]
    for _ in range(p):
        powers.append(_matmul(powers[-1], G, q))
    is_id = lambda m: (m == ident).all(axis=-1)  # noqa: E731
    elems = G[is_id(powers[p]) & ~is_id(G)]

    def subgroup_key(gens: np.ndarray) -> np.ndarray:
        # smallest code among the non-identity powers identifies <g>
        cur, best = gens, _code(gens, q)
        for _ in range(p - 2):
            cur = _matmul(cur, gens, q)
            best = np.minimum(best, _code(cur, q))
        return best

    keys = subgroup_key(elems)
    subgroups = np.unique(keys)
    class_of = {int(k): -1 for k in subgroups}
    gen_of = {int(k): elems[i] for i, k in enumerate(keys)}
    G_inv = _inv(G, q)
    sizes = []
    for k in subgroups:
        k = int(k)
        if class_of[k] >= 0:
            continue
        cls = len(sizes)
        conj = _matmul(_matmul(G, np.broadcast_to(gen_of[k], G.shape), q), G_inv, q)
        members = np.unique(subgroup_key(conj))
        for m in members:
            class_of[int(m)] = cls
        sizes.append(len(members))

    rep_arr = np.array([m.as_tuple() for m in reps])
    rep_classes = [class_of[int(k)] for k in subgroup_key(rep_arr)]
    distinct = len(set(rep_classes)) == len(rep_classes)
    cover = set(rep_classes) == set(range(len(sizes)))
    return Gl2LemmaReport(
        p=p,
        q=q,
        group_order=len(G),
        order_p_elements=len(elems),
        order_p_subgroups=len(subgroups),
        classes=len(sizes),
        class_sizes=sizes,
        expected_classes=(p + 3) // 2,
        representatives_distinct=distinct,
        representatives_cover=cover,
        match=distinct and cover and len(sizes) == (p + 3) // 2,
        representatives=[m.as_tuple() for m in reps],
    )
