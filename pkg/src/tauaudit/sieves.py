"""Divisor sums sigma_k(n) for n = 1..N, exact or reduced mod m.

All tables are built by the additive divisor sieve: every pair (d, c) with
d*c <= N contributes d**k to position d*c. The pair loop is split at
isqrt(N) so each step is one strided numpy update (2*sqrt(N) steps rather
than N), but the arithmetic is the same O(N log N) additions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import FactorBudget, factor
from .errors import DomainError, ResourceError, UnavailableError

SUPPORTED_K = (3, 5, 11)
DEFAULT_MEMORY_BUDGET = 4 * 2**30
# int64 products of two residues must not overflow
INT64_MODULUS_LIMIT = 2**31


@dataclass(frozen=True, eq=False)
class SigmaTable:
    """``values[n] = sigma_k(n)`` (mod ``modulus`` when set); ``values[0]`` is 0."""

    k: int
    N: int
    values: np.ndarray
    modulus: int | None = None

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"sigma table covers 1..{self.N}, asked for {n}")
        return int(self.values[n])

    def __len__(self) -> int:
        return self.N

    def tolist(self) -> list[int]:
        """Values for n = 1..N as Python ints."""
        return [int(v) for v in self.values[1:]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SigmaTable):
            return NotImplemented
        return (
            (self.k, self.N, self.modulus) == (other.k, other.N, other.modulus)
            and self.tolist() == other.tolist()
        )


def estimate_bytes(k: int, N: int, modulus: int | None = None) -> int:
    """Rough resident size of a table, used for the memory budget check."""
    if modulus is not None and modulus < INT64_MODULUS_LIMIT:
        return 8 * (N + 1)
    if modulus is not None:
        bits = modulus.bit_length()
    else:
        # sigma_k(n) < zeta(k) n^k <= 1.21 n^k for k >= 3
        bits = k * max(N, 1).bit_length() + 1
    int_size = 28 + 4 * (bits // 30)
    return (N + 1) * (8 + int_size)


def _check_args(k: int, N: int) -> None:
    if k not in SUPPORTED_K:
        raise DomainError(f"sigma_k supports k in {SUPPORTED_K}, got {k}")
    if N < 1:
        raise DomainError(f"table bound must be >= 1, got {N}")


def _check_budget(k: int, N: int, modulus: int | None, memory_budget: int) -> None:
    need = estimate_bytes(k, N, modulus)
    if need > memory_budget:
        raise ResourceError(
            f"sigma_{k} table to N={N} needs ~{need} bytes, over memory_budget_bytes={memory_budget}"
        )


def _divisor_add(out: np.ndarray, powers: np.ndarray, N: int) -> None:
    r = math.isqrt(N)
    # c <= r: positions c, 2c, ..., receive 1^k, 2^k, ... (every d <= N // c)
    for c in range(1, r + 1):
        m = N // c
        out[c : c * m + 1 : c] += powers[1 : m + 1]
    # c > r forces d <= r: add d^k at d*c for c in r+1 .. N // d
    for d in range(1, r + 1):
        m = N // d
        if m > r:
            out[d * (r + 1) : d * m + 1 : d] += powers[d]


def sigma_sieve(k: int, N: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> SigmaTable:
    """Exact sigma_k(1..N) as Python ints in an object array."""
    _check_args(k, N)
    _check_budget(k, N, None, memory_budget)
    powers = np.empty(N + 1, dtype=object)
    powers[:] = [d**k for d in range(N + 1)]
    values = np.zeros(N + 1, dtype=object)
    _divisor_add(values, powers, N)
    values[0] = 0
    return SigmaTable(k, N, values)


def _powers_mod(k: int, N: int, m: int) -> np.ndarray:
    d = np.arange(N + 1, dtype=np.int64) % m
    out = np.ones(N + 1, dtype=np.int64) % m
    for _ in range(k):
        out = out * d % m
    return out


def sigma_mod_sieve(
    k: int, N: int, m: int, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> SigmaTable:
    """sigma_k(1..N) mod m. int64 arithmetic for m < 2**31, Python ints above."""
    _check_args(k, N)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    _check_budget(k, N, m, memory_budget)
    if m < INT64_MODULUS_LIMIT:
        powers = _powers_mod(k, N, m)
        values = np.zeros(N + 1, dtype=np.int64)
        r = math.isqrt(N)
        # at most 2r + 1 additions of values < 2**31 per slot before reduction
        for c in range(1, r + 1):
            mm = N // c
            values[c : c * mm + 1 : c] += powers[1 : mm + 1]
        values %= m
        for d in range(1, r + 1):
            mm = N // d
            if mm > r:
                values[d * (r + 1) : d * mm + 1 : d] += powers[d]
        values %= m
    else:
        powers = np.empty(N + 1, dtype=object)
        powers[:] = [pow(d, k, m) for d in range(N + 1)]
        values = np.zeros(N + 1, dtype=object)
        _divisor_add(values, powers, N)
        values %= m
    values[0] = 0
    return SigmaTable(k, N, values, m)


def sigma_prime_power(k: int, p: int, e: int, modulus: int | None = None) -> int:
    """1 + p^k + ... + p^(k e), optionally reduced mod ``modulus``."""
    if modulus is None:
        pk = p**k
        return (pk ** (e + 1) - 1) // (pk - 1)
    return geometric_sum_mod(pow(p, k, modulus), e + 1, modulus)


def geometric_sum_mod(r: int, terms: int, m: int) -> int:
    """(1 + r + ... + r^(terms-1)) mod m without dividing by r - 1."""
    # s(2t) = s(t) (1 + r^t); s(t+1) = 1 + r s(t)
    s, rt = 0, 1  # s(0), r^0
    for bit in bin(terms)[2:]:
        s, rt = s * (1 + rt) % m, rt * rt % m
        if bit == "1":
            s, rt = (1 + r * s) % m, rt * r % m
    return s % m


def sigma_single(k: int, n: int, budget: FactorBudget = FactorBudget()) -> int:
    """sigma_k(n) from the factorization of n."""
    if n < 1:
        raise DomainError(f"sigma_single needs n >= 1, got {n}")
    f = factor(n, budget)
    if not f.complete:
        raise UnavailableError(f"could not factor {n} within {budget}")
    return math.prod(sigma_prime_power(k, p, e) for p, e in f.factors.items())
