import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import divisor_sum
from tauaudit.arith import FactorBudget
from tauaudit.errors import DomainError, ResourceError, UnavailableError
from tauaudit.sieves import (
    geometric_sum_mod,
    sigma_mod_sieve,
    sigma_prime_power,
    sigma_single,
    sigma_sieve,
)


def divisor_table(k, N):
    """sigma_k(1..N) by enumerating divisor pairs up to sqrt(n)."""
    out = [0] * (N + 1)
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            out[m] += d**k
    return out[1:]


class TestExamples:
    def test_sigma5_small(self):
        assert sigma_sieve(5, 4).tolist() == [1, 33, 244, 1057]

    def test_sigma11_of_2(self):
        assert sigma_sieve(11, 2)[2] == 2049

    def test_sigma3_of_6(self):
        assert sigma_sieve(3, 6)[6] == divisor_sum(3, 6) == 252

    def test_index_bounds(self):
        t = sigma_sieve(3, 5)
        with pytest.raises(IndexError):
            t[0]
        with pytest.raises(IndexError):
            t[6]


@pytest.mark.parametrize("k", [3, 5, 11])
def test_sieve_matches_divisor_enumeration(k):
    N = 10**4
    assert sigma_sieve(k, N).tolist() == divisor_table(k, N)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 15, 16, 17, 99, 100, 101])
def test_boundaries_around_square_roots(N):
    for k in (3, 5, 11):
        assert sigma_sieve(k, N).tolist() == [divisor_sum(k, n) for n in range(1, N + 1)]


SIGMA5_TO_250K = sigma_sieve(5, 250_000)


@given(st.integers(1, 500), st.integers(1, 500))
@settings(max_examples=300)
def test_multiplicative(m, n):
    assume(math.gcd(m, n) == 1)
    t = SIGMA5_TO_250K
    assert t[m * n] == t[m] * t[n]


@pytest.mark.parametrize("m", [2, 691, 216113, 2**31 - 1, 2**31 + 11, 10**40 + 7])
@pytest.mark.parametrize("k", [5, 11])
def test_mod_sieve_matches_exact(k, m):
    N = 3000
    exact = sigma_sieve(k, N).tolist()
    got = sigma_mod_sieve(k, N, m)
    assert got.modulus == m
    assert got.tolist() == [v % m for v in exact]


def test_mod_one_is_zero():
    assert sigma_mod_sieve(5, 50, 1).tolist() == [0] * 50


def test_int64_path_does_not_overflow():
    # largest int64-path modulus, N large enough that many additions pile up
    m = 2**31 - 1
    N = 20000
    exact = sigma_sieve(5, N).values
    got = sigma_mod_sieve(5, N, m).values
    assert got.dtype == np.int64
    assert all(int(a) % m == int(b) for a, b in zip(exact[1:], got[1:]))


class TestErrors:
    def test_unsupported_k(self):
        with pytest.raises(DomainError):
            sigma_sieve(7, 10)

    def test_bad_N(self):
        with pytest.raises(DomainError):
            sigma_sieve(5, 0)

    def test_memory_budget(self):
        with pytest.raises(ResourceError, match="memory_budget_bytes"):
            sigma_sieve(11, 10**6, memory_budget=10**6)


class TestPrimePowers:
    @pytest.mark.parametrize("k, p, e", [(5, 2, 1), (11, 3, 4), (5, 691, 2), (11, 1381, 3)])
    def test_closed_form(self, k, p, e):
        assert sigma_prime_power(k, p, e) == sum(p ** (k * j) for j in range(e + 1))

    @given(st.integers(0, 10**6), st.integers(0, 200), st.integers(1, 10**9))
    def test_geometric_sum_mod(self, r, terms, m):
        assert geometric_sum_mod(r, terms, m) == sum(pow(r, j, m) for j in range(terms)) % m

    def test_modular_closed_form(self):
        for m in (691, 252 * 691, 7**5):
            assert sigma_prime_power(11, 7, 3, m) == sigma_prime_power(11, 7, 3) % m


class TestSigmaSingle:
    @pytest.mark.parametrize("n", [1, 2, 12, 690, 9973, 249_999, 250_000])
    def test_matches_sieve(self, n):
        assert sigma_single(5, n) == SIGMA5_TO_250K[n]

    def test_unfactored_raises(self):
        n = 1099511627791 * 1099511627803
        with pytest.raises(UnavailableError):
            sigma_single(5, n, FactorBudget(trial_bound=100, rho_iterations=10))
