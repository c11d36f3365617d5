"""Recompute gcd(A(p), B(p)) for the published primes (first three, or all with --full)."""

import argparse
import time

from tauaudit.tables import TABLE2, TABLE2_DEFAULT_ROWS, reproduce_table2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    published = dict(TABLE2)
    start = time.perf_counter()
    rows, _ = reproduce_table2(full=args.full, jobs=args.jobs)
    print("p,computed,published,match")
    for p, got in rows:
        print(f"{p},{got},{published[p]},{got == published[p]}")
    n = len(TABLE2) if args.full else TABLE2_DEFAULT_ROWS
    print(f"# {sum(got == published[p] for p, got in rows)}/{n} rows match, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
