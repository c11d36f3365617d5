"""Auditors for the prime-indexed claims about A(p) and tau(p).

Every auditor returns :class:`ClaimReport` values. A claim that turns out
false is reported with verdict ``fails`` and a counterexample; it is never
raised as an error.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arith import (
    DlogTower,
    FactorBudget,
    base_digits,
    discrete_log,
    factor,
    is_prime,
    is_prime_proven,
    primes_up_to,
    primitive_root,
)
from .constants import P691
from .errors import DomainError
from .report import ClaimReport, Verdict, verdict_of
from .sieves import SigmaTable, sigma_sieve
from .tau import a_mod, a_prime_power, tau_eisenstein_at, tau_eta

TOWER_HEIGHT = 5
SMALL_MODULUS_LIMIT = 2**63


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def lemma1_check(p: int) -> ClaimReport:
    """(A(p) = 0 mod 691) <=> (p = -1 mod 691), each side computed on its own."""
    _require_prime(p)
    a_res = a_mod(p, 1, P691)
    left = a_res == 0
    right = p % P691 == P691 - 1
    witness = {"A_mod_691": a_res, "p_mod_691": p % P691, "A_divisible": left, "p_is_minus_one": right}
    return ClaimReport("LEMMA1", {"p": p}, verdict_of(left == right), witness)


def lemma1_scan(max_p: int) -> ClaimReport:
    primes = [int(p) for p in primes_up_to(max_p)]
    divisible = []
    bad = []
    for p in primes:
        r = lemma1_check(p)
        if r.witness["A_divisible"]:
            divisible.append(p)
        if r.verdict is not Verdict.HOLDS:
            bad.append(p)
    witness = {"primes_checked": len(primes), "A_divisible_by_691": divisible}
    if bad:
        witness["counterexamples"] = bad
    return ClaimReport("LEMMA1_SCAN", {"max_p": max_p}, verdict_of(not bad), witness)


@dataclass(frozen=True)
class DigitProfile:
    p: int
    alpha: int
    digits: tuple[int, ...]  # base-p digits of A(p^alpha), least significant first

    def value(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))


def digit_profile(p: int, alpha: int = 1) -> tuple[DigitProfile, list[ClaimReport]]:
    """Base-p digits of A(p^alpha) and the low-digit claim A(p^alpha) = 3 mod p^5.

    The companion claim that digits 1..4 are all nonzero only arises inside a
    proof by contradiction, so it is reported as not directly testable with
    the actual digits attached.
    """
    if p <= 3:
        raise DomainError(f"digit profile needs p > 3 so that 3 is a base-p digit, got {p}")
    _require_prime(p)
    A = a_prime_power(p, alpha)
    profile = DigitProfile(p, alpha, tuple(base_digits(A, p)))
    low = list(profile.digits[:5]) + [0] * max(0, 5 - len(profile.digits))
    residue = A % p**5
    length_ok = len(profile.digits) <= 11 * alpha
    inputs = {"p": p, "alpha": alpha}
    witness = {
        "low_digits": low,
        "A_mod_p5": residue,
        "num_digits": len(profile.digits),
        "max_digits": 11 * alpha,
    }
    if residue != 3:
        witness["counterexample"] = f"A(p^alpha) mod p^5 = {residue}, not 3"
    eq12 = ClaimReport("DIGITS_EQ12", inputs, verdict_of(residue == 3 and length_ok), witness)
    eq15 = ClaimReport(
        "DIGITS_EQ15",
        inputs,
        Verdict.NOT_DIRECTLY_TESTABLE,
        {"digits_1_to_4": low[1:5], "note": "derived under a hypothesis the actual A(p) violates"},
    )
    return profile, [eq12, eq15]


def tower_height(p: int, big_modulus: bool = False) -> int:
    if big_modulus:
        return TOWER_HEIGHT
    h = 0
    while h < TOWER_HEIGHT and p ** (h + 1) < SMALL_MODULUS_LIMIT:
        h += 1
    return h


def dlog_tower(p: int, big_modulus: bool = False) -> tuple[DlogTower | None, list[ClaimReport]]:
    """Discrete logs T_i of A(p) mod p^i for i = 1..height, with the tower checks.

    Height is 5 unless p^i would reach 2**63 (``big_modulus`` lifts the cap).
    """
    if p == 2:
        raise DomainError("dlog tower needs an odd prime")
    _require_prime(p)
    height = tower_height(p, big_modulus)
    inputs = {"p": p, "height": height}
    A = a_prime_power(p)
    if height == 0:
        return None, [ClaimReport("DLOG_EQ19", inputs, Verdict.UNDETERMINED, {"reason": "p exceeds the modulus cap"})]
    if A % p == 0:
        raise DomainError(f"p={p} divides A(p); no discrete log exists")
    g = primitive_root(p, height)
    T = [discrete_log(g, A % p**i, p, i) for i in range(1, height + 1)]
    orders = [p ** (i - 1) * (p - 1) for i in range(1, height + 1)]
    d = [(T[i] - T[i - 1]) // orders[i - 1] for i in range(1, height)]
    tower = DlogTower(p, g, A, tuple(T), tuple(d))

    eq19_bad = [i for i in range(1, height + 1) if pow(g, T[i - 1], p**i) != A % p**i]
    compat_bad = [i for i in range(1, height) if (T[i] - T[i - 1]) % orders[i - 1]]
    zero_steps = [i for i, di in enumerate(d, start=1) if di < 1]
    base = {"g": g, "T": T, "d": d}
    if height < TOWER_HEIGHT:
        base["capped_at"] = height
    reports = [
        ClaimReport("DLOG_EQ19", inputs, verdict_of(not eq19_bad), {**base, "bad_levels": eq19_bad}),
        ClaimReport(
            "DLOG_EQ20", inputs, verdict_of(not compat_bad and min(d, default=0) >= 0), {**base, "bad_levels": compat_bad}
        ),
        ClaimReport("DLOG_EQ21", inputs, verdict_of(not zero_steps), {**base, "zero_steps": zero_steps}),
        ClaimReport(
            "DLOG_EQ22",
            inputs,
            verdict_of(all(T[i] < T[i + 1] for i in range(height - 1))),
            {**base, "strictly_increasing": all(T[i] < T[i + 1] for i in range(height - 1))},
        ),
    ]
    return tower, reports


def find_factor_above(p: int, alpha: int = 1, budget: FactorBudget = FactorBudget()) -> ClaimReport:
    """Search for a prime factor of A(p^alpha) exceeding p^alpha.

    Certification: ``holds`` needs a proven prime witness above p^alpha, or a
    leftover piece above p^alpha whose every prime factor provably exceeds
    p^alpha because the trial-division bound reached p^alpha. A complete
    factorization with every prime at most p^alpha ``fails``; anything else is
    ``undetermined``.
    """
    _require_prime(p)
    claim = "LEMMA2" if alpha == 1 else "LEMMA8"
    bound = p**alpha
    A = a_prime_power(p, alpha)
    f = factor(A, budget)
    inputs = {"p": p, "alpha": alpha}
    witness = {"A": A, "factors": f.factors, "cofactor": f.cofactor, "trial_bound": budget.trial_bound}

    proven = [q for q in f.primes() if q > bound and is_prime_proven(q)]
    if proven:
        q = proven[0]
        if a_mod(p, alpha, q) != 0:  # independent check through the closed form
            raise DomainError(f"factor {q} does not divide A({p}^{alpha})")
        return ClaimReport(claim, inputs, Verdict.HOLDS, {**witness, "q": q})
    unproven = [q for q in f.primes() if q > bound] + ([f.cofactor] if f.cofactor > 1 else [])
    if unproven and budget.trial_bound >= bound:
        return ClaimReport(
            claim, inputs, Verdict.HOLDS, {**witness, "q_piece": unproven[0], "certificate": "trial-bound"}
        )
    if f.complete and not unproven:
        return ClaimReport(claim, inputs, Verdict.FAILS, {**witness, "counterexample": "all prime factors <= p^alpha"})
    return ClaimReport(claim, inputs, Verdict.UNDETERMINED, witness)


def gap_set(bound: int) -> list[int]:
    """All alpha in 1..bound such that no prime factor of alpha + 1 divides 690."""
    forbidden = set(factor(P691 - 1).factors)
    return [a for a in range(1, bound + 1) if not forbidden & set(factor(a + 1).factors)]


def periodicity_audit(p: int, alpha: int, k_max: int) -> list[ClaimReport]:
    """A(p^(alpha + k(alpha+1))) = 0 mod 691 for k = 0..k_max, given it holds at k=0.

    Also checks the stated equivalence of 691 | A(p^alpha) with
    (p^(alpha+1) = 1 mod 691 and gcd(p-1, 691) = 1).
    """
    _require_prime(p)
    if a_mod(p, alpha, P691) != 0:
        raise DomainError(f"precondition A({p}^{alpha}) = 0 mod {P691} does not hold")
    inputs = {"p": p, "alpha": alpha, "k_max": k_max}
    exponents = [alpha + k * (alpha + 1) for k in range(k_max + 1)]
    residues = [a_mod(p, e, P691) for e in exponents]
    bad = [e for e, r in zip(exponents, residues) if r]
    periodic = ClaimReport(
        "PERIODICITY",
        inputs,
        verdict_of(not bad),
        {"exponents": exponents, "A_mod_691": residues, **({"counterexamples": bad} if bad else {})},
    )
    cond = pow(p, alpha + 1, P691) == 1 and math.gcd(p - 1, P691) == 1
    eq66 = ClaimReport(
        "PERIODICITY_EQ66",
        {"p": p, "alpha": alpha},
        verdict_of(cond),
        {"p_pow_alpha_plus_1_mod_691": pow(p, alpha + 1, P691), "gcd_p_minus_1_691": math.gcd(p - 1, P691)},
    )
    return [periodic, eq66]


def lehmer_scan(
    N: int,
    sample_every: int = 100,
    spot_checks: int = 200,
    seed: int = 0,
    s5: SigmaTable | None = None,
    s11: SigmaTable | None = None,
) -> ClaimReport:
    """tau(n) != 0 for n <= N via the eta engine.

    Every ``sample_every``-th value is recomputed by the Eisenstein identity
    and ``spot_checks`` random coprime pairs test multiplicativity.
    """
    series = tau_eta(N)
    zeros = [n for n in range(1, N + 1) if series[n] == 0]
    if s5 is None or s5.N < N or s5.modulus is not None:
        s5 = sigma_sieve(5, N)
    if s11 is None or s11.N < N or s11.modulus is not None:
        s11 = sigma_sieve(11, N)
    sample = list(range(1, N + 1, sample_every))
    mismatch = [n for n in sample if tau_eisenstein_at(n, s5, s11) != series[n]]
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < spot_checks and N >= 6:
        m = rng.randint(2, max(2, math.isqrt(N)))
        n = rng.randint(2, N // m)
        if math.gcd(m, n) == 1:
            pairs.append((m, n))
    mult_bad = [(m, n) for m, n in pairs if series[m * n] != series[m] * series[n]]
    witness = {
        "tau_1": series[1],
        "cross_checked": len(sample),
        "multiplicativity_checks": len(pairs),
    }
    if zeros:
        witness["first_zero"] = zeros[0]
    if mismatch:
        witness["engine_mismatch"] = mismatch
    if mult_bad:
        witness["multiplicativity_failures"] = mult_bad
    return ClaimReport("LEHMER_SCAN", {"N": N}, verdict_of(not (zeros or mismatch or mult_bad)), witness)
