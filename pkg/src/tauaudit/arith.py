"""Exact integer and modular arithmetic.

Python's ``int`` is the arbitrary-precision integer and ``fractions.Fraction``
the exact rational throughout the package; this module adds the number
theory on top of them: primality, partial factorization, primitive roots,
discrete logarithms and Bernoulli numbers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

# Deterministic Miller-Rabin for n < 3.3e24 (Sorenson & Webster), which
# covers every n < 2**64.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_LIMIT = 2**64
# 64 random rounds: error below 4**-64 = 2**-128 for composite n.
PROBABILISTIC_ROUNDS = 64

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_ITERATIONS = 1_000_000


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Return ``base**exponent mod modulus`` in ``[0, modulus)``.

    Square-and-multiply, O(log exponent) multiplications.
    """
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    if exponent < 0:
        raise DomainError(f"exponent must be non-negative, got {exponent}")
    if modulus == 1:
        return 0
    result = 1
    base %= modulus
    while exponent:
        if exponent & 1:
            result = result * base % modulus
        base = base * base % modulus
        exponent >>= 1
    return result


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=8)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(bound))


def _strong_probable_prime(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic below 2**64 using the fixed witness set ``MR_BASES``.
    Above that, 64 extra rounds with bases drawn from an RNG seeded by ``n``
    (so results are reproducible); see :func:`is_prime_proven`.
    """
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, d, s, a) for a in MR_BASES):
        return False
    if n < DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(
        _strong_probable_prime(n, d, s, rng.randrange(2, n - 1))
        for _ in range(PROBABILISTIC_ROUNDS)
    )


def is_prime_proven(n: int) -> bool:
    """True when ``is_prime(n)`` is a proof rather than a probable-prime verdict."""
    return n < DETERMINISTIC_LIMIT


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = DEFAULT_TRIAL_BOUND
    rho_iterations: int = DEFAULT_RHO_ITERATIONS


@dataclass(frozen=True)
class PartialFactorization:
    """``n == prod(p**e for p, e in factors.items()) * cofactor``.

    ``cofactor`` is 1 exactly when ``complete``; otherwise it is a composite
    number no prime below ``trial_bound`` divides, which rho failed to split
    within its iteration cap.
    """

    n: int
    factors: dict[int, int]
    cofactor: int = 1
    trial_bound: int = DEFAULT_TRIAL_BOUND

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def probabilistic(self) -> tuple[int, ...]:
        return tuple(p for p in self.factors if not is_prime_proven(p))

    def reassemble(self) -> int:
        return math.prod(p**e for p, e in self.factors.items()) * self.cofactor

    def primes(self) -> list[int]:
        return sorted(self.factors)


def _brent_rho(n: int, max_iterations: int, seed: int) -> tuple[int | None, int]:
    """Brent's cycle-finding rho on odd composite n.

    Returns (factor or None, iterations used). None with iterations left
    means the walk degenerated and a new seed is worth trying.
    """
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += 2 * r
        r *= 2
        if g == 1 and used > max_iterations:
            return None, used
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), used


def factor(n: int, budget: FactorBudget = FactorBudget()) -> PartialFactorization:
    """Trial division up to ``budget.trial_bound``, then Brent's rho.

    Running out of rho iterations is not an error: the unsplit remainder is
    returned as the cofactor and ``complete`` is False.
    """
    if n < 1:
        raise DomainError(f"factor() needs n >= 1, got {n}")
    factors: dict[int, int] = {}
    m = n
    for p in _trial_primes(budget.trial_bound):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors[p] = e
    if m == 1:
        return PartialFactorization(n, factors, 1, budget.trial_bound)
    if m <= budget.trial_bound**2 or is_prime(m):
        # nothing below the trial bound divides m, so m <= bound**2 means prime
        factors[m] = factors.get(m, 0) + 1
        return PartialFactorization(n, factors, 1, budget.trial_bound)

    stubborn = 1
    pending = [m]
    while pending:
        c = pending.pop()
        if is_prime(c):
            factors[c] = factors.get(c, 0) + 1
            continue
        d, left, seed = None, budget.rho_iterations, 0
        while d is None and left > 0:
            d, used = _brent_rho(c, left, seed)
            left -= used
            seed += 1
        if d is None:
            stubborn *= c
        else:
            pending.extend((d, c // d))
    return PartialFactorization(n, dict(sorted(factors.items())), stubborn, budget.trial_bound)


def factor_small(n: int) -> dict[int, int]:
    """Complete factorization for n small enough that trial division finishes."""
    f = factor(n)
    if not f.complete:
        raise DomainError(f"could not fully factor {n}")
    return f.factors


def primitive_root(p: int, i: int = 1) -> int:
    """Smallest generator of the multiplicative group mod ``p**i`` (p odd prime)."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"primitive_root needs an odd prime, got {p}")
    if i < 1:
        raise DomainError(f"exponent must be >= 1, got {i}")
    modulus = p**i
    order = p ** (i - 1) * (p - 1)
    cofactors = [order // r for r in factor_small(order)]
    for g in range(2, modulus):
        if g % p == 0:
            continue
        if all(pow(g, c, modulus) != 1 for c in cofactors):
            return g
    raise DomainError(f"no primitive root mod {p}^{i}")  # unreachable for odd prime p


def _bsgs(h: int, x: int, order: int, modulus: int) -> int:
    """Solve ``h**e == x`` for ``0 <= e < order`` where h has the given order."""
    m = math.isqrt(order - 1) + 1
    table: dict[int, int] = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * h % modulus
    step = pow(h, -m, modulus)
    y = x
    for i in range(m):
        j = table.get(y)
        if j is not None:
            return i * m + j
        y = y * step % modulus
    raise DomainError("element is not in the subgroup generated by h")


def discrete_log(g: int, a: int, p: int, i: int = 1) -> int:
    """Return T in ``[0, p**(i-1)*(p-1))`` with ``g**T == a (mod p**i)``.

    Pohlig-Hellman over the factorization of the group order, with
    baby-step/giant-step inside each prime-power subgroup (solved one base-r
    digit at a time). ``g`` must be a primitive root mod ``p**i``.
    """
    if a % p == 0:
        raise DomainError(f"{a} is not a unit modulo {p}")
    modulus = p**i
    order = p ** (i - 1) * (p - 1)
    a %= modulus
    residues, moduli = [], []
    for r, e in factor_small(order).items():
        re = r**e
        gamma = pow(g, order // r, modulus)  # order r
        g_sub = pow(g, order // re, modulus)
        a_sub = pow(a, order // re, modulus)
        x = 0
        for k in range(e):
            # strip the digits found so far and project to the order-r subgroup
            hk = pow(a_sub * pow(g_sub, -x, modulus) % modulus, r ** (e - 1 - k), modulus)
            x += _bsgs(gamma, hk, r, modulus) * r**k
        residues.append(x)
        moduli.append(re)
    t = crt(residues, moduli)
    if pow(g, t, modulus) != a:
        raise DomainError(f"{g} does not generate {a} modulo {p}^{i}; is it a primitive root?")
    return t


def crt(residues: list[int], moduli: list[int]) -> int:
    """Chinese remaindering for pairwise coprime moduli; result in [0, prod)."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        t = (r - x) * pow(m, -1, n) % n
        x += m * t
        m *= n
    return x % m


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with B_1 = -1/2 (coefficients of x/(e^x - 1))."""
    if not 0 <= k <= 12:
        raise DomainError(f"bernoulli() supports 0 <= k <= 12, got {k}")
    return _bernoulli_table()[k]


@lru_cache(maxsize=1)
def _bernoulli_table() -> tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    b = [Fraction(1)]
    for m in range(1, 13):
        s = sum(math.comb(m + 1, j) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return tuple(b)


def valuation(n: int, p: int) -> int:
    """Exponent of prime p in nonzero integer n."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def base_digits(n: int, base: int) -> list[int]:
    """Digits of n >= 0 in the given base, least significant first."""
    digits = []
    while n:
        n, d = divmod(n, base)
        digits.append(d)
    return digits or [0]


@dataclass(frozen=True)
class DlogTower:
    """Discrete logs of one residue up a tower of prime-power moduli."""

    p: int
    g: int
    target: int
    T: tuple[int, ...]
    d: tuple[int, ...] = field(default=())

    def group_order(self, i: int) -> int:
        return self.p ** (i - 1) * (self.p - 1)
