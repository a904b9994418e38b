"""Small modular-arithmetic helpers."""

from __future__ import annotations

from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation as {prime: exponent}."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def multiplicative_order(x: int, m: int) -> int:
    x %= m
    if gcd(x, m) != 1:
        raise ValueError(f"{x} is not a unit mod {m}")
    k, y = 1, x
    while y != 1 % m:
        y = y * x % m
        k += 1
    return k


def smallest_element_of_order(order: int, m: int) -> int:
    """Smallest integer > 1 whose multiplicative order mod m is exactly `order`."""
    for x in range(2, m):
        if gcd(x, m) == 1 and multiplicative_order(x, m) == order:
            return x
    raise ValueError(f"no element of order {order} mod {m}")


def smallest_nonresidue(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    for a in range(2, p):
        if a not in squares:
            return a
    raise ValueError(f"no quadratic nonresidue mod {p}")


def is_square_mod(a: int, p: int) -> bool:
    a %= p
    return any(x * x % p == a for x in range(p))


def crt_idempotent(prime_power: int, modulus: int) -> int:
    """The e with e = 1 mod prime_power and e = 0 mod modulus/prime_power."""
    rest = modulus // prime_power
    if rest == 1:
        return 1 % modulus
    return rest * pow(rest, -1, prime_power) % modulus
