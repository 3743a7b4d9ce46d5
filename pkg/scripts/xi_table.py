"""Print certified ξ_k for a range of k, with minimal factors and attaining graphs."""
import argparse
import time
from fractions import Fraction

from flowroots.xi import xi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=7)
    ap.add_argument("--tolerance", type=Fraction, default=Fraction(1, 10**12))
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args()

    print(f"{'k':>2}  {'xi_k':<16} {'factor':<40} graph")
    for k in range(3, args.max_k + 1):
        t0 = time.perf_counter()
        cert = xi(k, tolerance=args.tolerance, cache_dir=args.cache_dir)
        dt = time.perf_counter() - t0
        factor = str(cert.minimal_factor) if cert.minimal_factor is not None else "-"
        graph = cert.attaining_graph.decode() if cert.attaining_graph else "-"
        print(f"{k:>2}  {cert.value_approx:<16} {factor:<40} {graph}  ({dt:.1f}s)")


if __name__ == "__main__":
    main()
