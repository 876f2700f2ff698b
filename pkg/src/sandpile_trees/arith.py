"""Integer helpers: geometric-series counts, lcm sequences, small factorizations."""
from __future__ import annotations

from functools import reduce
from math import gcd, isqrt, lcm


def theta(d: int, n: int) -> int:
    """``((d-1)^n - 1) / (d-2)``, i.e. ``1 + (d-1) + ... + (d-1)^(n-1)``."""
    if d < 3:
        raise ValueError(f"theta needs d >= 3, got {d}")
    if n < 0:
        raise ValueError(f"theta needs n >= 0, got {n}")
    return ((d - 1) ** n - 1) // (d - 2)


def eta(r: int, s: int) -> int:
    """``lcm{r^n - 1 : n = 1..s}``."""
    if r < 2 or s < 1:
        raise ValueError(f"eta needs r >= 2 and s >= 1, got ({r}, {s})")
    return reduce(lcm, (r**n - 1 for n in range(1, s + 1)), 1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` by trial division."""
    n = abs(n)
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def coprime_part(n: int, t: int) -> tuple[int, int]:
    """Split ``n = a * b`` with the primes of ``a`` exactly those shared with ``t``."""
    a = 1
    g = gcd(n, t)
    while g > 1:
        n //= g
        a *= g
        g = gcd(n, g)
    return a, n


def multiplicative_order(a: int, m: int) -> int:
    if m < 1 or gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k
