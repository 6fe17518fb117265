"""Time the exact duality checks over an (n, d) grid, every level regime, one field."""
import argparse
import time
from collections import Counter

from qduality.duality import DualityCase, IndexSubset, classify_level, verify_case
from qduality.fields import sample_parameter_point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--d-max", type=int, default=4)
    ap.add_argument("--points", type=int, default=3)
    ap.add_argument("--field", default="fp61")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    tally, failures = Counter(), []
    start = time.perf_counter()
    for n in range(2, args.n_max + 1):
        t0 = time.perf_counter()
        for d in range(args.d_max + 1):
            for k in range(args.points):
                point = sample_parameter_point(n, d + n, args.seed + 100 * d + k, args.field)
                for r in range(1, n):
                    for l in range(-r, n - r + 1):
                        regime = classify_level(n, r, l)
                        v = verify_case(DualityCase.build(point, IndexSubset.first(n, r), d, l))
                        tally[regime.value] += 1
                        if not v:
                            failures.append((n, r, d, l, k))
        print(f"n={n}: {time.perf_counter() - t0:6.2f}s")
    print(dict(tally))
    print(f"{sum(tally.values())} checks, {len(failures)} failures, {time.perf_counter() - start:.1f}s")
    for f in failures[:10]:
        print("  failed (n, r, d, l, point):", f)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
