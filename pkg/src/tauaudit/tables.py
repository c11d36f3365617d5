"""Reproduction of the two published data tables.

``TABLE1`` lists (p, q, |S_0|, ..., |S_5|) for primes p = -1 mod 691 and a
prime q > p dividing A(p). ``TABLE2`` lists primes p = -1 mod 691 with the
printed factorization of gcd(A(p), B(p)).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

from .arith import FactorBudget
from .constants import P691
from .report import ClaimReport, Verdict, verdict_of
from .matrix import build_row1, census_of, census_reports, check_majority_inequality, format_factors, gcd_analysis, gcd_reports
from .tau import a_mod

TABLE1: tuple[tuple[int, ...], ...] = (
    (8291, 216113, 212008, 4065, 40, 0, 0, 0),
    (29021, 1357091, 1342657, 14358, 76, 0, 0, 0),
    (30403, 1283839, 1268731, 15015, 93, 0, 0, 0),
    (34549, 789673, 772578, 16918, 175, 2, 0, 0),
    (51133, 112919, 89995, 20474, 2267, 174, 9, 0),
    (53897, 371549, 345582, 25014, 925, 28, 0, 0),
    (96739, 392957, 347376, 42917, 2543, 118, 3, 0),
)

TABLE2: tuple[tuple[int, str], ...] = (
    (547271, "2.3.11.691"),
    (610843, "2.3.17.691"),
    (988129, "2.3.5.13.691"),
    (1112509, "2.3.5.23.691"),
    (1336393, "2.3.101.691"),
    (1405493, "2.3.113.691"),
    (1716463, "2.3^2.23.691"),
    (1875373, "2.23.691"),
    (1940327, "2^2.3^2.13.691"),
    (2126897, "2.3^3.19.691"),
    (2128279, "2^2.5.11.691"),
    (2161447, "2^2.23.691"),
    (2198761, "2.43.691"),
    (2447521, "2.23.691"),
    (2479307, "2.23.691"),
    (2538733, "2.11.691"),
    (2542879, "2^4.3.5.23.691"),
    (2956097, "2.23.691"),
)
TABLE2_DEFAULT_ROWS = 3

TABLE1_HEADER = "p,q,S0,S1,S2,S3,S4,S5"
TABLE2_HEADER = "p,gcd_factors"

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """map() over a process pool of size ``jobs``, results in input order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def table1_row(pair: tuple[int, int]) -> tuple[tuple[int, ...], list[ClaimReport]]:
    """Computed census row for (p, q) plus every check attached to it."""
    p, q = pair
    row1 = build_row1(p, q)
    c = census_of(row1)
    computed = (p, q, *c.padded(6))
    published = next((r for r in TABLE1 if r[:2] == (p, q)), None)
    inputs = {"p": p, "q": q}
    a_q, a_691 = a_mod(p, 1, q), a_mod(p, 1, P691)
    reports = [
        ClaimReport(
            "TABLE1_DIVIDES",
            inputs,
            verdict_of(a_q == 0 and a_691 == 0 and q > p),
            {"A_mod_q": a_q, "A_mod_691": a_691},
        ),
    ]
    if published is not None:
        witness = {"computed": list(computed[2:]), "published": list(published[2:])}
        reports.append(ClaimReport("TABLE1_ROW", inputs, verdict_of(computed == published), witness))
    reports += census_reports(c)
    reports.append(check_majority_inequality(c))
    return computed, reports


def reproduce_table1(pairs: Iterable[tuple[int, int]] | None = None, jobs: int = 1):
    pairs = [r[:2] for r in TABLE1] if pairs is None else list(pairs)
    results = ordered_map(table1_row, pairs, jobs)
    rows = [r for r, _ in results]
    reports = [rep for _, reps in results for rep in reps]
    return rows, reports


def table2_row(p: int, budget: FactorBudget = FactorBudget()) -> tuple[tuple[int, str], list[ClaimReport]]:
    ga = gcd_analysis(p, budget)
    computed = (p, format_factors(ga.g_factors.factors))
    reports = gcd_reports(ga)
    published = dict(TABLE2).get(p)
    if published is not None:
        reports.append(
            ClaimReport(
                "TABLE2_ROW",
                {"p": p},
                verdict_of(computed[1] == published),
                {"computed": computed[1], "published": published, "g": ga.g},
            )
        )
    if not ga.g_factors.complete:
        reports.append(ClaimReport("TABLE2_FACTORED", {"p": p}, Verdict.UNDETERMINED, {"cofactor": ga.g_factors.cofactor}))
    return computed, reports


def reproduce_table2(primes: Iterable[int] | None = None, full: bool = False, jobs: int = 1):
    if primes is None:
        primes = [p for p, _ in (TABLE2 if full else TABLE2[:TABLE2_DEFAULT_ROWS])]
    results = ordered_map(table2_row, list(primes), jobs)
    rows = [r for r, _ in results]
    reports = [rep for _, reps in results for rep in reps]
    return rows, reports


def table1_csv(rows: Iterable[tuple[int, ...]]) -> str:
    return "\n".join([TABLE1_HEADER, *(",".join(map(str, r)) for r in rows)]) + "\n"


def table2_csv(rows: Iterable[tuple[int, str]]) -> str:
    return "\n".join([TABLE2_HEADER, *(f"{p},{f}" for p, f in rows)]) + "\n"
