"""Screen a corpus and write per-graph records (JSON lines) plus a summary."""
import argparse
import json
import time
from pathlib import Path

from flowroots.analyzer import ScreenSummary, certified_xi_lower, dumps, iter_screen
from flowroots.corpus import load_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", default="default")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=None, help="JSON-lines file for the records")
    args = ap.parse_args()

    t0 = time.perf_counter()
    graphs = load_corpus(args.corpus, args.seed)
    print(f"{len(graphs)} graphs in corpus {args.corpus} ({time.perf_counter() - t0:.1f}s)")
    summary = ScreenSummary()
    sink = args.out.open("w") if args.out else None
    for rec in iter_screen(graphs, args.jobs, xi_lower=certified_xi_lower()):
        summary.add(rec)
        if sink:
            sink.write(dumps(rec) + "\n")
    if sink:
        sink.close()
    print(json.dumps(summary.to_json(corpus=args.corpus), indent=1))
    print(f"done in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
