#!/usr/bin/env python
"""Run every property check over the audit corpus and print one row per
complex: sizes, dimension, degree, worst root diameter, least bottleneck
delta, and the check outcomes.  Exit status 1 if any check fails."""

import argparse
import json
import sys
import time

from ccx.checks import CHECKS, check_suite
from ccx.constructions import corpus
from ccx.hypgraphs import contact_graph, degree, dimension
from ccx.quasitree import minimal_bottleneck_delta


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random-count", type=int, default=50)
    ap.add_argument("--max-vertices", type=int, default=2000)
    ap.add_argument("--skip", nargs="*", default=[], choices=CHECKS, help="checks to leave out")
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args(argv)

    rows, bad = [], 0
    header = f"{'complex':28} {'V':>5} {'W':>3} {'dim':>3} {'deg':>3} {'M':>2} {'delta':>5}  checks"
    print(header)
    print("-" * len(header))
    t0 = time.perf_counter()
    for name, X in corpus(args.random_count, args.max_vertices).items():
        results = [r for c in CHECKS if c not in args.skip for r in check_suite(X, c)]
        qt = next((r for r in results if r.name == "quasi-tree"), None)
        M = qt.data.get("max_root_diameter", 0) if qt else "-"
        delta = str(minimal_bottleneck_delta(contact_graph(X).graph)) if X.num_walls else "-"
        failed = [r.name for r in results if not r.passed]
        bad += bool(failed)
        row = {"complex": name, "vertices": len(X), "walls": X.num_walls, "dimension": dimension(X),
               "degree": degree(X), "max_root_diameter": M, "min_bottleneck_delta": delta, "failed": failed}
        rows.append(row)
        status = "ok" if not failed else "FAIL " + ",".join(failed)
        print(f"{name:28} {len(X):>5} {X.num_walls:>3} {row['dimension']:>3} {row['degree']:>3} {M!s:>2} {delta:>5}  {status}")
    print(f"\n{len(rows)} complexes, {bad} with failures, {time.perf_counter() - t0:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
