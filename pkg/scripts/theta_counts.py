"""Level sizes of the expansion family and the exhaustive cross-check against its conditions."""
import argparse
import time

from flowroots.theta import cross_validate_phi_theta, enumerate_theta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=8)
    ap.add_argument("--cross-validate", type=int, default=6, metavar="N",
                    help="compare against all multigraphs on at most N vertices (0 to skip)")
    args = ap.parse_args()

    for k in range(2, args.max_k + 1):
        t0 = time.perf_counter()
        n = len(enumerate_theta(k))
        print(f"level {k}: {n} graphs ({time.perf_counter() - t0:.1f}s)")
    if args.cross_validate >= 2:
        t0 = time.perf_counter()
        cv = cross_validate_phi_theta(args.cross_validate)
        print(f"cross-validation up to {args.cross_validate} vertices: "
              f"{'pass' if cv.passed else 'FAIL'} ({time.perf_counter() - t0:.1f}s)")
        for n in sorted(cv.candidates):
            print(f"  n={n}: {cv.candidates[n]} candidates, {cv.phi_counts[n]} satisfy the conditions, "
                  f"{cv.theta_counts[n]} in the family, mismatches {len(cv.mismatches[n])}")


if __name__ == "__main__":
    main()
