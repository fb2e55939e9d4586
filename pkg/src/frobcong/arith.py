"""Integer arithmetic helpers shared across the package."""

from __future__ import annotations

from math import gcd, isqrt

import sympy


def is_prime(n: int) -> bool:
    return sympy.isprime(n)


def factorint(n: int) -> dict:
    return sympy.factorint(n)


def primes_upto(n: int):
    """Primes p <= n, ascending."""
    return list(sympy.primerange(2, n + 1))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers n.

    Extends the Jacobi symbol by (a/2) = 0, 1, -1 for a even, a = ±1 (8),
    a = ±3 (8), together with (a/-1) = sign handling and (a/0) = [|a| = 1].
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # strip factors of 2 from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi on odd n >= 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def legendre(n: int, p: int) -> int:
    """Legendre symbol (n/p) for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre requires an odd prime, got {p}")
    return kronecker(n, p)


def dedekind_psi(n: int) -> int:
    """psi(n) = n * prod_{p | n} (1 + 1/p)."""
    out = n
    for p in factorint(n):
        out = out // p * (p + 1)
    return out


def divisors(n: int) -> list:
    return sympy.divisors(n)


def isqrt_exact(n: int):
    """Return sqrt(n) if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g
