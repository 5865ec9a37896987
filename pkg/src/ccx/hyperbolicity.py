"""Finite-scale hyperbolicity indicators: largest biclique in the crossing
graph, the four-point delta of the 1-skeleton, isometrically embedded
square grids, and the grid-size bound driven by biclique size.

Hyperbolicity is asymptotic; every finite complex is hyperbolic for some
delta.  Nothing here returns a yes/no verdict.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .config import DEFAULT_SEARCH_CAP
from .errors import InternalConsistencyError, InvalidInputError, ResourceCapError
from .graphs import Graph, all_pairs_distances
from .median_core import CubeComplex, bits_to_str, gate


# ---------------------------------------------------------------- bicliques

@dataclass(frozen=True)
class BicliqueWitness:
    side_H: tuple  # the smaller side (ties: the lexicographically smaller)
    side_V: tuple
    p: int
    q: int

    @property
    def min_side(self) -> int:
        return self.p


def _witness(A, B) -> BicliqueWitness:
    a, b = tuple(sorted(A)), tuple(sorted(B))
    if (len(a), a) > (len(b), b):
        a, b = b, a
    return BicliqueWitness(a, b, len(a), len(b))


def _biclique_key(w: BicliqueWitness):
    # larger is better; the lexicographic part is negated by ordering below
    return (w.p, w.p + w.q)


def max_biclique(D: Graph) -> BicliqueWitness:
    """Exact complete bipartite subgraph maximising min(p, q), then p + q,
    then the lexicographically least (small side, large side).

    Both sides must be nonempty; an edgeless graph gives the empty witness.
    Search: grow one side A in increasing vertex order; the other side is
    the common neighbourhood N(A); branches whose N(A) is already smaller
    than the best minimum are cut.
    """
    verts = list(D.vertices)
    adj = D.adj
    best = BicliqueWitness((), (), 0, 0)

    def consider(A, B):
        nonlocal best
        # close both sides: A' = N(B) contains A
        A2 = frozenset.intersection(*(adj[b] for b in B))
        w = _witness(A2, B)
        kw, kb = _biclique_key(w), _biclique_key(best)
        if kw > kb or (kw == kb and (w.side_H, w.side_V) < (best.side_H, best.side_V)):
            best = w

    def grow(A, common, start):
        if A and common:
            consider(A, common)
        for idx in range(start, len(verts)):
            v = verts[idx]
            nxt = (adj[v] if not A else common & adj[v])
            if len(nxt) < best.p or not nxt:
                continue
            grow(A | {v}, nxt, idx + 1)

    grow(frozenset(), frozenset(), 0)
    return best


def is_biclique(D: Graph, A, B) -> bool:
    A, B = set(A), set(B)
    return not (A & B) and all(D.has_edge(a, b) for a in A for b in B)


# ---------------------------------------------------------------- four-point

def four_point_delta(X: CubeComplex) -> Fraction:
    """max over quadruples of (largest - second largest of the three pair
    sums) / 2, on the 1-skeleton metric."""
    d = X.distance_matrix
    n = d.shape[0]
    # pair sums stay below 4 * num_walls, so a narrow dtype keeps the
    # (y, z, w) slabs small
    d = d.astype(np.int16 if 4 * max(X.num_walls, 1) < 2 ** 15 else np.int64)
    best = 0
    for x in range(n - 1):
        ys = np.arange(x + 1, n)
        s1 = d[x, ys][:, None, None] + d[None, :, :]  # d(x,y) + d(z,w)
        s2 = d[x][None, :, None] + d[ys][:, None, :]  # d(x,z) + d(y,w)
        s3 = d[x][None, None, :] + d[ys][:, :, None]  # d(x,w) + d(y,z)
        top = np.maximum(np.maximum(s1, s2), s3)
        low = np.minimum(np.minimum(s1, s2), s3)
        mid = s1 + s2 + s3 - top - low
        best = max(best, int((top - mid).max()))
    return Fraction(best, 2)


def four_point_delta_brute(X: CubeComplex) -> Fraction:
    """Loop-over-quadruples reference used by the tests."""
    d = X.distance_matrix
    n = d.shape[0]
    best = 0
    for x, y, z, w in combinations(range(n), 4):
        s = sorted([d[x, y] + d[z, w], d[x, z] + d[y, w], d[x, w] + d[y, z]])
        best = max(best, int(s[2] - s[1]))
    return Fraction(best, 2)


# ---------------------------------------------------------------- grids

@dataclass(frozen=True)
class GridWitness:
    r: int
    embedding: dict  # (i, j) -> 0-cube, i, j in 0..r

    def check(self, X: CubeComplex) -> bool:
        return grid_is_isometric(X, self.embedding, self.r)


def grid_is_isometric(X: CubeComplex, emb: dict, r: int) -> bool:
    pts = [(i, j) for i in range(r + 1) for j in range(r + 1)]
    if set(emb) != set(pts) or any(emb[p] not in X.vertices for p in pts):
        return False
    for a, b in combinations(pts, 2):
        if (emb[a] ^ emb[b]).bit_count() != abs(a[0] - b[0]) + abs(a[1] - b[1]):
            return False
    return True


def chains(X: CubeComplex, walls, length: int, limit: int = DEFAULT_SEARCH_CAP) -> list:
    """All sequences of ``length`` distinct walls from ``walls`` in which
    consecutive members are disjoint and every interior member separates
    its two neighbours (so the sequence is nested).  One direction per chain."""
    side = X.wall_side_table
    walls = sorted(walls)
    out = []
    steps = 0

    def ok_next(seq, w):
        if side[seq[-1]][w] is None:
            return False
        if len(seq) >= 2:
            a, b = seq[-2], seq[-1]
            if side[b][a] == side[b][w]:
                return False
        # nested: every earlier member lies on the far side from w
        return all(side[w][u] is not None and side[w][u] == side[w][seq[0]] for u in seq)

    def ext(seq):
        nonlocal steps
        steps += 1
        if steps > limit:
            raise ResourceCapError(f"chain search exceeds {limit} steps", cap=limit)
        if len(seq) == length:
            if seq[0] < seq[-1] or length == 1:
                out.append(tuple(seq))
            return
        for w in walls:
            if w not in seq and ok_next(seq, w):
                ext(seq + [w])

    for w in walls:
        ext([w])
    return out


def _forward_sides(X: CubeComplex, chain) -> list:
    """For each chain member, the halfspace (0/1) that contains the members
    after it (for the last member, the side away from its predecessor)."""
    side = X.wall_side_table
    r = len(chain)
    if r == 1:
        return [1]
    fwd = [side[chain[k]][chain[k + 1]] for k in range(r - 1)]
    fwd.append(1 - side[chain[-1]][chain[-2]])
    return fwd


def _cell(X: CubeComplex, hc, hf, vc, vf, i, j) -> frozenset:
    need = [(w, f if k < i else 1 - f) for k, (w, f) in enumerate(zip(hc, hf))]
    need += [(w, f if k < j else 1 - f) for k, (w, f) in enumerate(zip(vc, vf))]
    return frozenset(v for v in X.vertices if all(((v >> w) & 1) == s for w, s in need))


def _gate_grid(X: CubeComplex, hc, vc, limit: int) -> GridWitness | None:
    r = len(hc)
    hf, vf = _forward_sides(X, hc), _forward_sides(X, vc)
    cells = {(i, j): _cell(X, hc, hf, vc, vf, i, j) for i in range(r + 1) for j in range(r + 1)}
    if any(not c for c in cells.values()):
        return None
    tries = 0
    for corner in sorted(cells[(0, 0)]):
        tries += 1
        if tries > limit:
            raise ResourceCapError(f"grid corner search exceeds {limit} tries", cap=limit)
        emb = {p: gate(X, corner, c) for p, c in cells.items()}
        if grid_is_isometric(X, emb, r):
            return GridWitness(r, emb)
    return None


def exhaustive_grid(X: CubeComplex, r: int, limit: int = DEFAULT_SEARCH_CAP) -> GridWitness | None:
    """Backtracking over all maps of the (r+1)^2 grid into the 0-skeleton."""
    pts = [(i, j) for i in range(r + 1) for j in range(r + 1)]
    verts = list(X.ordered)
    emb: dict = {}
    used: set = set()
    steps = 0

    def ext(k):
        nonlocal steps
        if k == len(pts):
            return True
        steps += 1
        if steps > limit:
            raise ResourceCapError(f"exhaustive grid search exceeds {limit} steps", cap=limit)
        p = pts[k]
        for v in verts:
            if v in used:
                continue
            if all((v ^ emb[q]).bit_count() == abs(p[0] - q[0]) + abs(p[1] - q[1]) for q in emb):
                emb[p] = v
                used.add(v)
                if ext(k + 1):
                    return True
                del emb[p]
                used.discard(v)
        return False

    return GridWitness(r, dict(emb)) if ext(0) else None


def flat_grid_witness(X: CubeComplex, r: int, crossing: Graph | None = None,
                      limit: int = DEFAULT_SEARCH_CAP, fallback_max_r: int = 3) -> GridWitness | None:
    """An isometric (r x r)-square grid in X, or None.

    Chains of length r are taken from the two sides of the largest biclique
    of the crossing graph; grid points are gates of a corner 0-cube into
    the cells cut out by the chains' halfspaces.  When that finds nothing
    and r <= ``fallback_max_r``, an exhaustive search decides.
    """
    if r < 1:
        raise InvalidInputError("grid side must be at least 1")
    if crossing is None:
        from .hypgraphs import crossing_graph
        crossing = crossing_graph(X).graph
    bic = max_biclique(crossing)
    if bic.p >= r:
        H = chains(X, bic.side_H, r, limit)
        V = chains(X, bic.side_V, r, limit)
        for hc, vc in product(H, V):
            w = _gate_grid(X, hc, vc, limit)
            if w is not None:
                if not w.check(X):
                    raise InternalConsistencyError("grid witness failed its own isometry check")
                return w
    if r <= fallback_max_r:
        return exhaustive_grid(X, r, limit)
    return None


def grid_size_bound(D: int, R: int) -> float:
    """2 log_{D-2}((D-3)(R+1) + 1) - 2, for valence bound D > 3."""
    if D <= 3:
        raise InvalidInputError("bound needs D > 3")
    if R < 0:
        raise InvalidInputError("R must be nonnegative")
    return 2 * math.log((D - 3) * (R + 1) + 1, D - 2) - 2


# ---------------------------------------------------------------- report

CAVEAT = ("hyperbolicity is asymptotic; these are finite-scale indicators "
          "(four-point delta of the 1-skeleton, biclique sizes of the crossing graph)")


@dataclass
class AnalysisReport:
    num_vertices: int
    num_walls: int
    dimension: int
    degree: int
    max_valence: int
    biclique_p: int
    biclique_q: int
    biclique_side_H: list = field(default_factory=list)
    biclique_side_V: list = field(default_factory=list)
    four_point_delta: str | None = None
    grid_witness_r: int = 0
    grid_witness: dict | None = None
    grid_size_bound: float | None = None
    max_root_diameter: int = 0
    min_bottleneck_delta: str | None = None
    caveat: str = CAVEAT

    def to_doc(self) -> dict:
        doc = asdict(self)
        doc["format"] = "ccx-report-v1"
        return doc


def analyze(X: CubeComplex, delta_vertex_limit: int = 400, grid_limit: int = 100_000) -> AnalysisReport:
    from .hypgraphs import contact_graph, crossing_graph, dimension, degree, max_valence
    from .quasitree import grade_hyperplanes, minimal_bottleneck_delta, verify_root_diameter

    G = contact_graph(X)
    D = crossing_graph(X)
    bic = max_biclique(D.graph)
    rep = AnalysisReport(
        num_vertices=len(X), num_walls=X.num_walls,
        dimension=dimension(X, D), degree=degree(X, G), max_valence=max_valence(X),
        biclique_p=bic.p, biclique_q=bic.q,
        biclique_side_H=[X.name(w) for w in bic.side_H], biclique_side_V=[X.name(w) for w in bic.side_V],
    )
    if len(X) <= delta_vertex_limit:
        rep.four_point_delta = str(four_point_delta(X))
    best = None
    for r in range(1, bic.p + 1):
        try:
            w = flat_grid_witness(X, r, D.graph, limit=grid_limit)
        except ResourceCapError:
            break
        if w is None:
            break
        best = w
    if best is not None:
        rep.grid_witness_r = best.r
        rep.grid_witness = {f"{i},{j}": bits_to_str(v, X.num_walls) for (i, j), v in sorted(best.embedding.items())}
    if rep.max_valence > 3 and bic.p >= 1:
        rep.grid_size_bound = grid_size_bound(rep.max_valence, bic.p)
    if X.num_walls:
        dist = all_pairs_distances(G.graph)
        rep.max_root_diameter = max(verify_root_diameter(grade_hyperplanes(G.graph, b), G.graph, dist)
                                    for b in G.vertices)
        rep.min_bottleneck_delta = str(minimal_bottleneck_delta(G.graph))
    return rep
