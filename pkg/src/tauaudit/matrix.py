"""Residue histograms of the sigma_5 self-convolution modulo an odd prime q.

For a prime p and odd prime q, row i of the histogram counts, for each
residue k mod q, the j in 1..p-1 with

    i * 691 * sigma_5(j) * sigma_5(p - j) = k  (mod q).

Rows are sparse (at most (p-1)/2 + 1 nonzero positions out of q) and are
never materialized densely. Row i >= 1 is row 1 with its keys multiplied by
i, so everything is derived from row 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import FactorBudget, PartialFactorization, factor, is_prime
from .constants import P691
from .errors import DomainError
from .report import ClaimReport, Verdict, verdict_of
from .sieves import DEFAULT_MEMORY_BUDGET, SigmaTable, sigma_mod_sieve, sigma_sieve
from .tau import a_mod, a_prime_power, ab_mod

DEFAULT_OP_BUDGET = 2 * 10**9
DEFAULT_SAMPLE = 10**4
_BATCH_ELEMENTS = 1 << 22


@dataclass(frozen=True, eq=False)
class SparseRow:
    """Nonzero entries of one histogram row: ``counts[t]`` at residue ``keys[t]``."""

    p: int
    q: int
    i: int
    keys: np.ndarray
    counts: np.ndarray

    @property
    def entries(self) -> dict[int, int]:
        return {int(k): int(c) for k, c in zip(self.keys, self.counts)}

    @property
    def nnz(self) -> int:
        return len(self.keys)

    def mass(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, k: int) -> int:
        t = np.searchsorted(self.keys, k)
        if t < len(self.keys) and self.keys[t] == k:
            return int(self.counts[t])
        return 0


def _check_q(q: int) -> None:
    if q == 2:
        raise DomainError("q must be an odd prime; got 2")
    if q < 2 or not is_prime(q):
        raise DomainError(f"q must be an odd prime; got {q}")


def _mulmod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    if q < 2**31:
        return a.astype(np.int64) * b.astype(np.int64) % q
    return np.array([int(x) * int(y) % q for x, y in zip(a, b)], dtype=object)


def _sparse(p: int, q: int, i: int, residues: np.ndarray, weights: np.ndarray) -> SparseRow:
    keys, inverse = np.unique(residues.astype(np.int64), return_inverse=True)
    counts = np.bincount(inverse, weights=weights, minlength=len(keys)).astype(np.int64)
    return SparseRow(p, q, i, keys, counts)


def build_row1(p: int, q: int, s5_mod: SigmaTable | None = None) -> SparseRow:
    """Row 1, using the j <-> p - j symmetry: each unordered pair adds 2."""
    _check_q(q)
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    if s5_mod is None or s5_mod.modulus != q or s5_mod.N < p:
        s5_mod = sigma_mod_sieve(5, p, q)
    v = s5_mod.values
    h = (p - 1) // 2
    left = v[1 : h + 1]
    right = v[p - h : p][::-1]
    f = _mulmod(_mulmod(left, right, q), np.full(h, P691 % q, dtype=np.int64), q)
    weights = np.full(h, 2, dtype=np.int64)
    if p % 2 == 0:  # j = p/2 pairs with itself
        mid = _mulmod(_mulmod(v[p // 2 : p // 2 + 1], v[p // 2 : p // 2 + 1], q), np.array([P691 % q]), q)
        f = np.concatenate([np.asarray(f, dtype=np.int64), np.asarray(mid, dtype=np.int64)])
        weights = np.concatenate([weights, [1]])
    return _sparse(p, q, 1, np.asarray(f, dtype=np.int64), weights)


def row_from_definition(p: int, q: int, i: int, s5_mod: SigmaTable | None = None) -> SparseRow:
    """Row i counted directly over every j in 1..p-1 (no symmetry, no remapping)."""
    _check_q(q)
    if s5_mod is None or s5_mod.modulus != q or s5_mod.N < p:
        s5_mod = sigma_mod_sieve(5, p, q)
    residues = [(i * P691 * s5_mod[j] * s5_mod[p - j]) % q for j in range(1, p)]
    return _sparse(p, q, i % q, np.array(residues, dtype=np.int64), np.ones(p - 1))


def row0(p: int, q: int) -> SparseRow:
    return row_from_definition(p, q, 0)


def row_i(row1: SparseRow, i: int) -> SparseRow:
    """Row i as a key permutation of row 1: entry at k moves to i*k mod q."""
    if i % row1.q == 0:
        return row0(row1.p, row1.q)
    keys = _mulmod(row1.keys, np.full(row1.nnz, i % row1.q, dtype=np.int64), row1.q).astype(np.int64)
    order = np.argsort(keys)
    return SparseRow(row1.p, row1.q, i % row1.q, keys[order], row1.counts[order])


@dataclass(frozen=True)
class Census:
    """``counts[l]`` = number of residues k with row-1 entry 2l; l = 0..q0."""

    p: int
    q: int
    counts: tuple[int, ...]

    @property
    def q0(self) -> int:
        return len(self.counts) - 1

    def padded(self, width: int = 6) -> tuple[int, ...]:
        return self.counts + (0,) * max(0, width - len(self.counts))


def census_of(row: SparseRow) -> Census:
    levels = row.counts // 2
    top = int(levels.max()) if row.nnz else 0
    counts = np.bincount(levels, minlength=top + 1)
    counts[0] = row.q - row.nnz
    return Census(row.p, row.q, tuple(int(c) for c in counts))


def census(p: int, q: int, s5_mod: SigmaTable | None = None) -> Census:
    return census_of(build_row1(p, q, s5_mod))


def census_reports(c: Census) -> list[ClaimReport]:
    """Totals over the census, and the existence of q0 < q - 1."""
    inputs = {"p": c.p, "q": c.q}
    total = sum(c.counts)
    mass = sum(2 * l * n for l, n in enumerate(c.counts))
    return [
        ClaimReport("CENSUS_EQ38", inputs, verdict_of(total == c.q), {"sum_counts": total, "q": c.q}),
        ClaimReport("CENSUS_EQ39", inputs, verdict_of(mass == c.p - 1), {"sum_2l_counts": mass, "p_minus_1": c.p - 1}),
        ClaimReport("CENSUS_Q0", inputs, verdict_of(c.q0 < c.q - 1), {"q0": c.q0}),
    ]


def check_majority_inequality(c: Census) -> ClaimReport:
    """|S_{l-1}| > l |S_l| for every l = 2..q0 (vacuous when q0 <= 1)."""
    bad = [l for l in range(2, c.q0 + 1) if not c.counts[l - 1] > l * c.counts[l]]
    witness: dict = {"counts": list(c.counts), "q0": c.q0}
    if bad:
        witness["violations"] = [[l, c.counts[l - 1], l * c.counts[l]] for l in bad]
    return ClaimReport("INEQ41", {"p": c.p, "q": c.q}, verdict_of(not bad), witness)


def weighted_sum_values(row1: SparseRow, indices: np.ndarray) -> np.ndarray:
    """C_i = sum_k (i k mod q) a_{1,k} for each i in ``indices`` (exact, int64 or object)."""
    q = row1.q
    indices = np.asarray(indices, dtype=np.int64)
    if q >= 2**31 or q * row1.mass() >= 2**62:
        return np.array(
            [sum(int(k) * i % q * int(a) for k, a in zip(row1.keys, row1.counts)) for i in indices.tolist()],
            dtype=object,
        )
    out = np.empty(len(indices), dtype=np.int64)
    batch = max(1, _BATCH_ELEMENTS // max(1, row1.nnz))
    for start in range(0, len(indices), batch):
        idx = indices[start : start + batch]
        out[start : start + batch] = (idx[:, None] * row1.keys[None, :] % q) @ row1.counts
    return out


@dataclass(frozen=True)
class WeightedSums:
    p: int
    q: int
    C: dict[int, int]
    full: bool


def _sample_indices(q: int, size: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    base = {1, 2, (q - 1) // 2}
    if q - 1 <= size:
        return np.arange(1, q, dtype=np.int64)
    picked = rng.choice(np.arange(1, q, dtype=np.int64), size=size, replace=False)
    return np.array(sorted(base | set(picked.tolist())), dtype=np.int64)


def weighted_sums(
    p: int,
    q: int,
    full: bool = False,
    sample_size: int = DEFAULT_SAMPLE,
    op_budget: int = DEFAULT_OP_BUDGET,
    row1: SparseRow | None = None,
    b_mod_q: int | None = None,
    seed: int = 0,
) -> tuple[WeightedSums, list[ClaimReport]]:
    """C_i over all i (full) or a deterministic sample, with the identities it must obey.

    Full mode is refused when q * nnz exceeds ``op_budget``; claims that need
    every C_i then come back ``undetermined`` with the sampled evidence.
    """
    row1 = row1 or build_row1(p, q)
    if b_mod_q is None:
        b_mod_q = ab_mod(p, 1, q)[1]
    inputs = {"p": p, "q": q, "mode": "full" if full else "sample"}
    cost = q * max(1, row1.nnz)
    refused = full and cost > op_budget
    use_full = full and not refused
    idx = np.arange(1, q, dtype=np.int64) if use_full else _sample_indices(q, sample_size, seed)
    partner = (q - idx) % q
    both = np.unique(np.concatenate([idx, partner]))
    values = weighted_sum_values(row1, both)
    C = {0: 0, **{int(i): int(c) for i, c in zip(both, values)}}
    ws = WeightedSums(p, q, C, use_full)

    c1 = C.get(1) if 1 in C else int(weighted_sum_values(row1, np.array([1]))[0])
    eq33_bad = [int(i) for i in idx if (C[int(i)] - int(i) * b_mod_q) % q]
    eq34_bad = [int(i) for i in idx if (C[int(i)] - int(i) * c1) % q]
    eq49_bad = [int(i) for i in idx if C[int(i)] + C[int(q - i)] != q * (p - 1)]
    n_checked = len(idx)
    reports = [
        ClaimReport("WSUM_EQ33", inputs, verdict_of(not eq33_bad), {"checked": n_checked, "B_mod_q": b_mod_q, "bad": eq33_bad[:20]}),
        ClaimReport("WSUM_EQ34", inputs, verdict_of(not eq34_bad), {"checked": n_checked, "C_1": c1, "bad": eq34_bad[:20]}),
        ClaimReport("WSUM_EQ49", inputs, verdict_of(not eq49_bad), {"checked": n_checked, "q_times_p_minus_1": q * (p - 1), "bad": eq49_bad[:20]}),
    ]

    nonzero = np.array(sorted(v for i, v in C.items() if i != 0), dtype=object)
    distinct = len(set(nonzero.tolist())) == len(nonzero)
    gaps = np.diff(nonzero) if len(nonzero) > 1 else np.array([], dtype=object)
    small_gap = bool(len(gaps)) and int(min(gaps)) < q - 1
    minimum = int(min(nonzero)) if len(nonzero) else None
    scope = {"scope": "full" if use_full else "sampled-only", "values": len(nonzero)}
    if refused:
        scope["refused"] = f"q*nnz = {cost} exceeds op_budget = {op_budget}"

    # a repeated value in any subset already refutes distinctness
    if not distinct:
        dup = _first_duplicate(C)
        reports.append(ClaimReport("WSUM_EQ52_DISTINCT", inputs, Verdict.FAILS, {**scope, "duplicate": dup}))
    else:
        reports.append(ClaimReport("WSUM_EQ52_DISTINCT", inputs, Verdict.HOLDS if use_full else Verdict.UNDETERMINED, scope))
    # sampled gaps can only be wider than the true ones, so a small one is conclusive
    if small_gap:
        reports.append(ClaimReport("WSUM_EQ56_GAP", inputs, Verdict.HOLDS, {**scope, "min_gap": int(min(gaps))}))
    elif use_full:
        reports.append(ClaimReport("WSUM_EQ56_GAP", inputs, Verdict.FAILS, {**scope, "min_gap": int(min(gaps)) if len(gaps) else None}))
    else:
        reports.append(ClaimReport("WSUM_EQ56_GAP", inputs, Verdict.UNDETERMINED, scope))
    pos = {**scope, "min_C": minimum}
    if use_full:
        reports.append(ClaimReport("WSUM_EQ55_POSITIVE", inputs, verdict_of(minimum is not None and minimum >= 1), pos))
        # both statements are about the same statistic; report each against it
        reports.append(ClaimReport("LEMMA3_V_MIN_2Q", inputs, verdict_of((minimum == 2 * q) == (b_mod_q == 0)), {**pos, "q_divides_B": b_mod_q == 0}))
        reports.append(ClaimReport("COR7_MIN_2", inputs, verdict_of(minimum == 2), pos))
    else:
        for claim in ("WSUM_EQ55_POSITIVE", "LEMMA3_V_MIN_2Q", "COR7_MIN_2"):
            reports.append(ClaimReport(claim, inputs, Verdict.UNDETERMINED, pos))
    return ws, reports


def _first_duplicate(C: dict[int, int]) -> list[int]:
    seen: dict[int, int] = {}
    for i, v in sorted(C.items()):
        if i == 0:
            continue
        if v in seen:
            return [seen[v], i, v]
        seen[v] = i
    return []


def group_classify(p: int, q: int, row1: SparseRow | None = None, checks: int = 64, seed: int = 0) -> list[ClaimReport]:
    """Order of the additive group generated by C_1 mod q, against the lemmas about it.

    The order is q when B(p) mod q is nonzero and 1 (the trivial group)
    otherwise. B(p) mod q comes from the reduced convolution; C_1 comes from
    the histogram, and the two must agree.
    """
    _check_q(q)
    row1 = row1 or build_row1(p, q)
    a_res, b_res = ab_mod(p, 1, q)
    c1 = int(weighted_sum_values(row1, np.array([1]))[0])
    order = q if b_res else 1
    inputs = {"p": p, "q": q}
    base = {"B_mod_q": b_res, "C_1": c1, "C_1_mod_q": c1 % q, "order": order}
    q_div_a = a_res == 0
    a691 = a_mod(p, 1, P691) == 0
    reports = [
        ClaimReport("GROUP_EQ33_I1", inputs, verdict_of(c1 % q == b_res), base),
        ClaimReport(
            "LEMMA3",
            inputs,
            verdict_of((q_div_a and b_res == 0) == (c1 % q == 0)),
            {**base, "q_divides_A": q_div_a},
        ),
    ]
    premises = q_div_a and q > p and a691
    if premises:
        wit = dict(base)
        if order != q:
            wit["counterexample"] = "q divides B(p), so the group is trivial"
        reports.append(ClaimReport("LEMMA4", inputs, verdict_of(order == q), wit))
    else:
        reports.append(
            ClaimReport(
                "LEMMA4",
                inputs,
                Verdict.NOT_DIRECTLY_TESTABLE,
                {**base, "q_divides_A": q_div_a, "q_gt_p": q > p, "691_divides_A": a691},
            )
        )
    idx = _sample_indices(q, checks, seed)
    ci = weighted_sum_values(row1, idx)
    cqi = weighted_sum_values(row1, q - idx)
    bad = [int(i) for i, x, y in zip(idx, ci, cqi) if (int(x) + int(y)) % q]
    reports.append(ClaimReport("GROUP_EQ61", inputs, verdict_of(not bad), {"checked": len(idx), "bad": bad}))
    return reports


@dataclass(frozen=True)
class GcdAnalysis:
    p: int
    g: int
    g_factors: PartialFactorization
    A: int
    A_factors: PartialFactorization
    A1: int
    A2: int
    bounds_report: dict[str, object]
    small_coprime_factors: tuple[int, ...]


def b_mod(p: int, modulus: int, s5: SigmaTable | None = None, chunk: int = 1 << 16) -> int:
    """B(p) mod ``modulus`` from an exact sigma_5 table, reducing after every chunk."""
    if s5 is None or s5.N < p or s5.modulus is not None:
        s5 = sigma_sieve(5, p)
    v = s5.values
    h = (p - 1) // 2
    acc = 0
    for start in range(1, h + 1, chunk):
        stop = min(h, start + chunk - 1)
        left = v[start : stop + 1]
        right = v[p - stop : p - start + 1][::-1]
        acc = (acc + int(np.dot(left, right))) % modulus
    acc = 2 * acc
    if p % 2 == 0:
        acc += int(v[p // 2]) ** 2
    return P691 * acc % modulus


def gcd_analysis(
    p: int,
    budget: FactorBudget = FactorBudget(),
    s5: SigmaTable | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> GcdAnalysis:
    """gcd(A(p), B(p)) computed as gcd(A, B mod A), and the split of A(p) at p.

    Trial division runs at least up to p, so every prime factor below p is
    found and any leftover cofactor belongs entirely above p.
    """
    A = a_prime_power(p)
    if s5 is None:
        s5 = sigma_sieve(5, p, memory_budget)
    g = math.gcd(A, b_mod(p, A, s5))
    g_factors = factor(g, budget)
    split_budget = FactorBudget(max(budget.trial_bound, p), budget.rho_iterations)
    fa = factor(A, split_budget)
    A1 = math.prod(r**e for r, e in fa.factors.items() if r < p)
    A2 = math.prod(r**e for r, e in fa.factors.items() if r > p) * fa.cofactor
    logp = math.log(p)
    bounds = {
        "log_p_A1": round(math.log(A1) / logp, 6),
        "log_p_A2": round(math.log(A2) / logp, 6) if A2 > 1 else 0.0,
        "A1_between_p2_p5": p**2 < A1 < p**5,
        "A2_between_p6_p10": p**6 < A2 < p**10,
        "split_complete": fa.complete,
    }
    small = tuple(r for r in fa.factors if r < p and r % 2 and r != P691 and g % r)
    return GcdAnalysis(p, g, g_factors, A, fa, A1, A2, bounds, small)


def gcd_reports(ga: GcdAnalysis) -> list[ClaimReport]:
    p = ga.p
    inputs = {"p": p}
    reports = [
        ClaimReport(
            "GCD_DIVIDES",
            inputs,
            verdict_of(ga.A % ga.g == 0),
            {"g": ga.g, "g_factors": ga.g_factors.factors},
        ),
    ]
    if p % P691 == P691 - 1:
        reports.append(ClaimReport("GCD_691_EVEN", inputs, verdict_of(ga.g % (2 * P691) == 0), {"g": ga.g}))
        odd_common = [r for r in ga.g_factors.factors if r % 2 and r != P691]
        reports.append(
            ClaimReport(
                "COROLLARY5",
                inputs,
                verdict_of(all(r < p for r in odd_common)),
                {"odd_common_factors": odd_common},
            )
        )
        reports.append(
            ClaimReport(
                "REMARK13_SPLIT",
                inputs,
                Verdict.NOT_DIRECTLY_TESTABLE,
                {"A1": ga.A1, "A2": ga.A2, **ga.bounds_report, "odd_factors_below_p_not_dividing_B": list(ga.small_coprime_factors)},
            )
        )
    return reports


def format_factors(factors: dict[int, int]) -> str:
    """Dot notation, ascending primes, exponents as ``p^e``: ``2^2.3.11.691``."""
    return ".".join(f"{r}^{e}" if e > 1 else str(r) for r, e in sorted(factors.items()))


def row_properties(p: int, q: int, samples: int = 20, direct_rows: int = 3, seed: int = 0) -> list[ClaimReport]:
    """Structural laws of the histogram rows, checked on row 1 and sampled rows.

    Rows built by remapping row 1 are compared with rows counted straight
    from the definition for ``direct_rows`` random indices.
    """
    s5 = sigma_mod_sieve(5, p, q)
    r1 = build_row1(p, q, s5)
    inputs = {"p": p, "q": q}
    rng = np.random.default_rng(seed)
    idx = [int(i) for i in rng.integers(1, q, size=samples)]
    rows = {i: row_i(r1, i) for i in [1, *idx]}
    r0 = row_from_definition(p, q, 0, s5)

    odd = [i for i, r in rows.items() if (r.counts % 2).any()]
    mass_bad = [i for i, r in rows.items() if r.mass() != p - 1]
    zero_col = {r[0] for r in rows.values()}
    sym_bad = []
    for i in idx:
        k = int(rng.integers(1, q))
        if rows[i][k] != row_i(r1, q - i)[(q - k) % q]:
            sym_bad.append([i, k])
    perm_bad = []
    for i in idx[:direct_rows]:
        d = row_from_definition(p, q, i, s5)
        if d.entries != rows[i].entries:
            perm_bad.append(i)
    return [
        ClaimReport("ROW_EQ29_EVEN", inputs, verdict_of(not odd), {"rows_checked": len(rows), "odd_rows": odd}),
        ClaimReport("ROW_EQ30_ROW0", inputs, verdict_of(r0.entries == {0: p - 1}), {"row0": r0.entries}),
        ClaimReport("ROW_EQ31_ZERO_COLUMN", inputs, verdict_of(len(zero_col) == 1), {"values": sorted(zero_col)}),
        ClaimReport("ROW_EQ32_SYMMETRY", inputs, verdict_of(not sym_bad), {"checked": len(idx), "bad": sym_bad}),
        ClaimReport("ROW_EQ35_PERMUTATION", inputs, verdict_of(not perm_bad), {"checked": min(direct_rows, len(idx)), "bad": perm_bad}),
        ClaimReport("ROW_EQ39_MASS", inputs, verdict_of(not mass_bad), {"p_minus_1": p - 1, "bad": mass_bad}),
    ]
