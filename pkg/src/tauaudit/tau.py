"""Three independent exact engines for tau(1..N), plus the A/B split.

* ``tau_eta``: coefficients of q * prod (1 - q^n)^24, by expanding the
  product with the pentagonal number series and multiplying 24 times.
* ``tau_eisenstein``: the sigma_11 / sigma_5 / sigma_5-self-convolution
  identity, evaluated as 756*tau(n) in integers.
* ``tau_discriminant``: (E_4^3 - E_6^2) / 1728 with Eisenstein coefficients
  taken from the Bernoulli numbers.

``A(n)`` and ``B(n)`` split ``3*tau(n)`` into a closed form in sigma_11,
sigma_5 and the 691-weighted convolution, ``3 tau(n) = A(n) - B(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .constants import (
    A_DENOM,
    DISCRIMINANT_DENOM,
    E4_COEFF,
    E6_COEFF,
    P691,
    TAU_CONV,
    TAU_SIGMA5,
    TAU_SIGMA11,
)
from .errors import ConsistencyError, DomainError
from .sieves import INT64_MODULUS_LIMIT, SigmaTable, sigma_mod_sieve, sigma_prime_power, sigma_sieve

Engine = Literal["eta", "eisenstein", "discriminant"]
ENGINES: tuple[Engine, ...] = ("eta", "eisenstein", "discriminant")

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class TauSeries:
    N: int
    values: tuple[int, ...]  # values[n - 1] = tau(n)
    engine: Engine

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"series covers 1..{self.N}, asked for {n}")
        return self.values[n - 1]


@dataclass(frozen=True)
class ABPair:
    n: int
    A: int
    B: int

    @property
    def tau(self) -> int:
        return (self.A - self.B) // 3


def pentagonal_terms(N: int) -> list[tuple[int, int]]:
    """Nonzero terms (exponent, sign) of prod_{n>=1} (1 - q^n) up to q^N."""
    terms = [(0, 1)]
    k = 1
    while (3 * k * k - k) // 2 <= N:
        sign = -1 if k % 2 else 1
        for e in ((3 * k * k - k) // 2, (3 * k * k + k) // 2):
            if e <= N:
                terms.append((e, sign))
        k += 1
    return terms


def _mul_sparse(dense: np.ndarray, terms: list[tuple[int, int]], N: int) -> np.ndarray:
    out = dense.copy()
    for e, sign in terms[1:]:
        if sign > 0:
            out[e:] += dense[: N + 1 - e]
        else:
            out[e:] -= dense[: N + 1 - e]
    return out


def eta_power(power: int, N: int) -> list[int]:
    """Coefficients of prod (1 - q^n)^power through q^N."""
    terms = pentagonal_terms(N)
    dense = np.zeros(N + 1, dtype=np.int64)
    dense[0] = 1
    for _ in range(power):
        # each output coefficient is a signed sum of len(terms) inputs
        if dense.dtype != object and int(np.abs(dense).max()) * len(terms) >= _INT64_SAFE:
            dense = dense.astype(object)
        dense = _mul_sparse(dense, terms, N)
    return [int(v) for v in dense]


def tau_eta(N: int) -> TauSeries:
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    coeffs = eta_power(24, N - 1)
    return TauSeries(N, tuple(coeffs), "eta")


def sigma5_convolution(s5: SigmaTable, n: int) -> int:
    """sum_{j=1}^{n-1} sigma_5(j) sigma_5(n-j), exact, paired as j <-> n-j."""
    if n < 2:
        return 0
    v = s5.values
    h = (n - 1) // 2
    total = 2 * int(np.dot(v[1 : h + 1], v[n - h : n][::-1])) if h else 0
    if n % 2 == 0:
        total += int(v[n // 2]) ** 2
    return total


def sigma5_convolution_mod(s5: SigmaTable, n: int, m: int) -> int:
    """Convolution sum mod m from a table of sigma_5 residues mod m."""
    if n < 2 or m == 1:
        return 0
    v = s5.values
    h = (n - 1) // 2
    if s5.modulus is not None and s5.modulus == m and m < INT64_MODULUS_LIMIT:
        left = v[1 : h + 1]
        right = v[n - h : n][::-1]
        total = 2 * int(np.sum(left * right % m, dtype=np.uint64))
    else:
        total = 2 * sum(int(a) * int(b) % m for a, b in zip(v[1 : h + 1], v[n - h : n][::-1]))
    if n % 2 == 0:
        total += int(v[n // 2]) ** 2
    return total % m


def tau_eisenstein(N: int, s5: SigmaTable | None = None, s11: SigmaTable | None = None) -> TauSeries:
    s5 = s5 or sigma_sieve(5, N)
    s11 = s11 or sigma_sieve(11, N)
    values = tuple(tau_eisenstein_at(n, s5, s11) for n in range(1, N + 1))
    return TauSeries(N, values, "eisenstein")


def tau_eisenstein_at(n: int, s5: SigmaTable, s11: SigmaTable) -> int:
    # 756 tau = 65 s11 + 691 s5 - 756 (691/3) conv
    c11 = TAU_SIGMA11 * 756
    c5 = TAU_SIGMA5 * 756
    cc = TAU_CONV * 756
    scaled = int(c11) * s11[n] + int(c5) * s5[n] - int(cc) * sigma5_convolution(s5, n)
    t, rem = divmod(scaled, 756)
    if rem:
        raise ConsistencyError(f"756*tau({n}) = {scaled} is not divisible by 756")
    return t


def _mul_trunc(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    return np.convolve(a, b)[: N + 1]


def tau_discriminant(N: int, s3: SigmaTable | None = None, s5: SigmaTable | None = None) -> TauSeries:
    s3 = s3 or sigma_sieve(3, N)
    s5 = s5 or sigma_sieve(5, N)
    e4 = np.empty(N + 1, dtype=object)
    e6 = np.empty(N + 1, dtype=object)
    e4[0] = e6[0] = 1
    e4[1:] = [E4_COEFF * v for v in s3.tolist()]
    e6[1:] = [E6_COEFF * v for v in s5.tolist()]
    diff = _mul_trunc(_mul_trunc(e4, e4, N), e4, N) - _mul_trunc(e6, e6, N)
    if diff[0] != 0:
        raise ConsistencyError(f"E4^3 - E6^2 has constant term {diff[0]}")
    values = []
    for n in range(1, N + 1):
        t, rem = divmod(int(diff[n]), DISCRIMINANT_DENOM)
        if rem:
            raise ConsistencyError(f"coefficient {n} of E4^3 - E6^2 not divisible by 1728")
        values.append(t)
    return TauSeries(N, tuple(values), "discriminant")


def compute_tau(N: int, engine: Engine = "eta") -> TauSeries:
    if engine == "eta":
        return tau_eta(N)
    if engine == "eisenstein":
        return tau_eisenstein(N)
    if engine == "discriminant":
        return tau_discriminant(N)
    raise DomainError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def a_from_sigmas(sigma11: int, sigma5: int) -> int:
    num = 65 * sigma11 + P691 * sigma5
    a, rem = divmod(num, A_DENOM)
    if rem:
        raise ConsistencyError(f"A = {num}/{A_DENOM} is not an integer")
    return a


def ab_pair(n: int, s5: SigmaTable | None = None, s11: SigmaTable | None = None) -> ABPair:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    s5 = s5 if s5 is not None and s5.N >= n and s5.modulus is None else sigma_sieve(5, n)
    s11 = s11 if s11 is not None and s11.N >= n and s11.modulus is None else sigma_sieve(11, n)
    A = a_from_sigmas(s11[n], s5[n])
    B = P691 * sigma5_convolution(s5, n)
    return ABPair(n, A, B)


def a_prime_power(p: int, alpha: int = 1) -> int:
    """Exact A(p^alpha) from the closed-form divisor sums."""
    return a_from_sigmas(sigma_prime_power(11, p, alpha), sigma_prime_power(5, p, alpha))


def a_mod(p: int, alpha: int, m: int) -> int:
    """A(p^alpha) mod m by modular geometric sums; never forms A exactly."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    big = A_DENOM * m  # 252 | numerator, so reduce mod 252 m before dividing
    num = 65 * sigma_prime_power(11, p, alpha, big) + P691 * sigma_prime_power(5, p, alpha, big)
    num %= big
    if num % A_DENOM:
        raise ConsistencyError(f"A({p}^{alpha}) numerator not divisible by {A_DENOM}")
    return num // A_DENOM % m


def ab_mod(p: int, alpha: int, m: int, s5_mod: SigmaTable | None = None) -> tuple[int, int]:
    """(A(p^alpha) mod m, B(p^alpha) mod m); B via the reduced convolution."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    n = p**alpha
    if s5_mod is None or s5_mod.N < n or s5_mod.modulus != m:
        s5_mod = sigma_mod_sieve(5, n, m)
    b = P691 * sigma5_convolution_mod(s5_mod, n, m) % m
    return a_mod(p, alpha, m), b


def is_multiplicative_on(values: TauSeries, pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Coprime pairs (m, n) from ``pairs`` where tau(mn) != tau(m) tau(n)."""
    bad = []
    for m, n in pairs:
        if math.gcd(m, n) == 1 and values[m * n] != values[m] * values[n]:
            bad.append((m, n))
    return bad
