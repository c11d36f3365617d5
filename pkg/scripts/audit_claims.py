"""Run the prime-indexed audits (digits, discrete-log tower, large factor, group) over a list of primes."""

import argparse
from collections import Counter

from tauaudit.claims import digit_profile, dlog_tower, find_factor_above
from tauaudit.matrix import group_classify, weighted_sums
from tauaudit.tables import TABLE1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full-sums", action="store_true", help="all q-1 weighted sums per census pair")
    args = ap.parse_args()

    reports = []
    for p, q, *_ in TABLE1:
        reports += digit_profile(p)[1]
        reports += dlog_tower(p)[1]
        reports.append(find_factor_above(p))
        reports += group_classify(p, q)
        reports += weighted_sums(p, q, full=args.full_sums)[1]
    tally = Counter((r.claim, r.verdict.value) for r in reports)
    for (claim, verdict), n in sorted(tally.items()):
        print(f"{claim:<22} {verdict:<22} {n}")


if __name__ == "__main__":
    main()
