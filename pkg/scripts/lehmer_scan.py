"""Check tau(n) != 0 for n <= N, with Eisenstein cross-checks and multiplicativity spot checks."""

import argparse
import json
import time

from tauaudit.claims import lehmer_scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=10**5)
    ap.add_argument("--sample-every", type=int, default=100)
    args = ap.parse_args()

    start = time.perf_counter()
    r = lehmer_scan(args.max, sample_every=args.sample_every)
    print(json.dumps(r.to_json(), indent=2))
    print(f"# {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
