#!/usr/bin/env python
"""Finite-scale hyperbolicity indicators along graded families: n x n
grids (flat), trees, tripod x path (big bicliques whose tripod side is
not a chain, so grids stay small) and recubulated trees.
Prints biclique sides, four-point delta and the largest verified grid
for each member.  These are indicators only; nothing here decides
hyperbolicity."""

import argparse

from ccx.constructions import grid, product, path, recubulate, tree_complex
from ccx.hyperbolicity import CAVEAT, analyze


def families(n_max: int):
    for n in range(1, n_max + 1):
        yield "grid", n, grid(n, n)
    for n in range(1, n_max + 1):
        yield "tree", n, tree_complex((3,) + (2,) * (2 ** n - 2))
    for n in range(1, n_max + 1):
        yield "tripod x path", n, product(tree_complex((3,)), path(n))
    for n in range(1, min(n_max, 3) + 1):
        yield "recubulated tree", n, recubulate(tree_complex((3,) + (2,) * (2 ** n - 2)))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--delta-limit", type=int, default=400, help="skip four-point delta above this many vertices")
    args = ap.parse_args(argv)
    print(f"{'family':18} {'n':>2} {'V':>5} {'dim':>3} {'biclique':>9} {'delta':>5} {'grid r':>6}")
    for fam, n, X in families(args.max_n):
        rep = analyze(X, delta_vertex_limit=args.delta_limit)
        bic = f"{rep.biclique_p},{rep.biclique_q}"
        delta = rep.four_point_delta or "-"
        print(f"{fam:18} {n:>2} {rep.num_vertices:>5} {rep.dimension:>3} {bic:>9} {delta:>5} {rep.grid_witness_r:>6}")
    print(f"\nnote: {CAVEAT}")


if __name__ == "__main__":
    main()
