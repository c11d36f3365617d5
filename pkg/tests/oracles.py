"""Slow, obviously-correct reference computations used only by the tests.

Nothing here imports the package: each function recomputes its quantity
from the definition by brute force.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def divisor_sum(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def trial_division_sieve(limit: int) -> bytearray:
    """flags[n] == 1 iff n is prime, by crossing out multiples."""
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for d in range(2, math.isqrt(limit) + 1):
        if flags[d]:
            flags[d * d :: d] = bytearray(len(range(d * d, limit + 1, d)))
    return flags


def naive_pow(base: int, e: int, m: int) -> int:
    r = 1 % m
    for _ in range(e):
        r = r * base % m
    return r


def multiplicative_order(g: int, m: int) -> int:
    x, k = g % m, 1
    while x != 1:
        x = x * g % m
        k += 1
    return k


def smallest_generator(p: int, i: int) -> int:
    m = p**i
    phi = p ** (i - 1) * (p - 1)
    return next(g for g in range(2, m) if g % p and multiplicative_order(g, m) == phi)


def exhaustive_log(g: int, a: int, m: int) -> int:
    x = 1
    for t in range(m):
        if x == a % m:
            return t
        x = x * g % m
    raise ValueError("no log")


def bernoulli_by_series(n: int) -> list[Fraction]:
    """B_0..B_n as k! times the coefficients of x / (e^x - 1).

    Inverts the power series (e^x - 1)/x = sum x^j/(j+1)! term by term.
    """
    c = [Fraction(1, math.factorial(j + 1)) for j in range(n + 1)]
    inv = [Fraction(0)] * (n + 1)
    inv[0] = 1 / c[0]
    for k in range(1, n + 1):
        inv[k] = -sum(c[j] * inv[k - j] for j in range(1, k + 1)) / c[0]
    return [inv[k] * math.factorial(k) for k in range(n + 1)]


def eta24_dense(N: int) -> list[int]:
    """tau(1..N) as coefficients of q prod (1 - q^n)^24, multiplying factor by factor."""
    poly = [1] + [0] * (N - 1)  # degree < N, times q gives q^1..q^N
    for n in range(1, N):
        for _ in range(24):
            for e in range(N - 1, n - 1, -1):
                poly[e] -= poly[e - n]
    return poly


def histogram_row(p: int, q: int, i: int) -> dict[int, int]:
    """Row i straight from the definition with exact divisor sums."""
    row: dict[int, int] = {}
    s5 = [0] + [divisor_sum(5, j) for j in range(1, p)]
    for j in range(1, p):
        k = i * 691 * s5[j] * s5[p - j] % q
        row[k] = row.get(k, 0) + 1
    return row


def a_exact(n: int) -> Fraction:
    return Fraction(65, 252) * divisor_sum(11, n) + Fraction(691, 252) * divisor_sum(5, n)


def b_exact(n: int) -> int:
    return 691 * sum(divisor_sum(5, j) * divisor_sum(5, n - j) for j in range(1, n))
