import math
import random
from fractions import Fraction

import pytest

from oracles import a_exact, b_exact, divisor_sum, eta24_dense
from tauaudit.constants import P691
from tauaudit.errors import DomainError
from tauaudit.sieves import sigma_mod_sieve, sigma_sieve
from tauaudit.tau import (
    ENGINES,
    a_mod,
    a_prime_power,
    ab_mod,
    ab_pair,
    compute_tau,
    eta_power,
    is_multiplicative_on,
    pentagonal_terms,
    sigma5_convolution,
    sigma5_convolution_mod,
    tau_eisenstein,
    tau_eta,
)

FIRST_TWELVE = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944]


def test_first_twelve_frozen_from_dense_product():
    assert eta24_dense(12) == FIRST_TWELVE


@pytest.mark.parametrize("engine", ENGINES)
def test_engines_first_twelve(engine):
    assert list(compute_tau(12, engine).values) == FIRST_TWELVE


@pytest.mark.parametrize("engine", ENGINES)
def test_engines_match_dense_oracle(engine):
    assert list(compute_tau(150, engine).values) == eta24_dense(150)


def test_engines_agree_to_600():
    series = [compute_tau(600, e).values for e in ENGINES]
    assert series[0] == series[1] == series[2]


def test_pentagonal_terms():
    # prod (1 - q^n) = 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
    assert pentagonal_terms(15) == [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)]


def test_eta_power_object_path():
    # large N pushes coefficients past the int64 guard
    big = eta_power(24, 3000)
    assert big[:12] == FIRST_TWELVE
    assert max(abs(c) for c in big) > 2**62


def test_known_large_values():
    # Ramanujan's congruence tau(n) = sigma_11(n) mod 691
    t = tau_eta(3000)
    s11 = sigma_sieve(11, 3000)
    assert all((t[n] - s11[n]) % P691 == 0 for n in range(1, 3001))


def test_bad_engine():
    with pytest.raises(DomainError):
        compute_tau(5, "hecke")


class TestAB:
    def test_n1(self):
        ab = ab_pair(1)
        assert (ab.A, ab.B) == (3, 0)
        assert ab.tau == 1

    def test_n2(self):
        ab = ab_pair(2)
        assert (ab.A, ab.B) == (619, 691)
        assert ab.tau == -24

    @pytest.mark.parametrize("n", [1, 2, 3, 10, 47, 100, 211])
    def test_against_rational_oracle(self, n):
        ab = ab_pair(n)
        assert Fraction(ab.A) == a_exact(n)
        assert ab.B == b_exact(n)

    def test_identity_to_500(self):
        s5, s11 = sigma_sieve(5, 500), sigma_sieve(11, 500)
        t = tau_eisenstein(500, s5, s11)
        for n in range(1, 501):
            ab = ab_pair(n, s5, s11)
            assert ab.A - ab.B == 3 * t[n]

    def test_a_prime_power(self):
        for p, e in [(2, 1), (3, 2), (691, 1), (1381, 3)]:
            s11 = sum(p ** (11 * j) for j in range(e + 1))
            s5 = sum(p ** (5 * j) for j in range(e + 1))
            assert a_prime_power(p, e) * 252 == 65 * s11 + 691 * s5

    def test_a_mod_examples(self):
        assert a_mod(8291, 1, 216113) == 0
        assert a_mod(29021, 1, 1357091) == 0
        assert a_mod(1381, 1, 691) == 0

    def test_a_mod_matches_exact(self):
        rng = random.Random(1)
        for _ in range(200):
            p = rng.choice([2, 3, 5, 7, 11, 13, 691, 1381, 8291])
            e = rng.randrange(1, 6)
            m = rng.randrange(1, 10**12)
            assert a_mod(p, e, m) == a_prime_power(p, e) % m

    def test_ab_mod_matches_exact_small_primes(self):
        primes = [p for p in range(2, 500) if all(p % d for d in range(2, math.isqrt(p) + 1))]
        s5, s11 = sigma_sieve(5, 500), sigma_sieve(11, 500)
        for m in (691, 216113):
            s5m = sigma_mod_sieve(5, 500, m)
            for p in primes:
                ab = ab_pair(p, s5, s11)
                assert ab_mod(p, 1, m, s5m) == (ab.A % m, ab.B % m)

    def test_convolution_mod(self):
        s5 = sigma_sieve(5, 400)
        for m in (691, 2**31 + 11):
            s5m = sigma_mod_sieve(5, 400, m)
            for n in (2, 3, 100, 399, 400):
                assert sigma5_convolution_mod(s5m, n, m) == sigma5_convolution(s5, n) % m

    def test_convolution_oracle(self):
        s5 = sigma_sieve(5, 60)
        for n in range(1, 61):
            assert sigma5_convolution(s5, n) == sum(divisor_sum(5, j) * divisor_sum(5, n - j) for j in range(1, n))


def test_multiplicative_to_2000():
    t = tau_eta(2000)
    pairs = [(m, n) for m in range(2, 45) for n in range(m + 1, 2000 // m + 1) if math.gcd(m, n) == 1]
    assert len(pairs) > 1000
    assert is_multiplicative_on(t, pairs) == []
