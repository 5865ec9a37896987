"""Contact graph, crossing graph and the relational predicates on
hyperplanes.  Each relation is computed two independent ways and the
results are compared; a disagreement raises InternalConsistencyError.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InternalConsistencyError, InvalidInputError
from .graphs import Graph, clique_number, connected_components, max_clique
from .median_core import CubeComplex, carrier


@dataclass(frozen=True)
class HypGraph:
    """A graph on the hyperplanes of one complex; ``kind`` is contact or crossing."""

    graph: Graph
    kind: str

    def __post_init__(self):
        if self.kind not in ("contact", "crossing"):
            raise InvalidInputError(f"unknown graph kind {self.kind!r}")

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def edges(self):
        return self.graph.edges

    def has_edge(self, u, v) -> bool:
        return self.graph.has_edge(u, v)


# ---------------------------------------------------------------- crossing

def crosses_by_square(X: CubeComplex, i: int, j: int) -> bool:
    mi, mj = 1 << i, 1 << j
    V = X.vertices
    return any(v ^ mi in V and v ^ mj in V and v ^ mi ^ mj in V for v in V)


def crosses_by_quarters(X: CubeComplex, i: int, j: int) -> bool:
    q = X.quarter_counts
    return bool((q[:, :, i, j] > 0).all())


def crossing_graph(X: CubeComplex) -> HypGraph:
    edges = []
    for i, j in combinations(X.walls, 2):
        sq, qu = crosses_by_square(X, i, j), crosses_by_quarters(X, i, j)
        if sq != qu:
            raise InternalConsistencyError(f"walls {i},{j}: square witness {sq} vs quarterspaces {qu}")
        if sq:
            edges.append((i, j))
    return HypGraph(Graph.from_edges(X.walls, edges), "crossing")


# ---------------------------------------------------------------- contact

def carriers(X: CubeComplex) -> list[frozenset]:
    return [carrier(X, i) for i in X.walls]


def separator(X: CubeComplex, i: int, j: int) -> int | None:
    """Least wall separating walls i and j, from the quarterspace side table."""
    side = X.wall_side_table
    for u in X.walls:
        if u in (i, j):
            continue
        a, b = side[u][i], side[u][j]
        if a is not None and b is not None and a != b:
            return u
    return None


def contact_graph(X: CubeComplex) -> HypGraph:
    carr = carriers(X)
    edges = []
    for i, j in combinations(X.walls, 2):
        meet = bool(carr[i] & carr[j])
        unseparated = separator(X, i, j) is None
        if meet != unseparated:
            raise InternalConsistencyError(f"walls {i},{j}: carriers meet {meet} vs unseparated {unseparated}")
        if meet:
            edges.append((i, j))
    return HypGraph(Graph.from_edges(X.walls, edges), "contact")


def osculations(X: CubeComplex, contact: HypGraph | None = None, crossing: HypGraph | None = None) -> list:
    contact = contact or contact_graph(X)
    crossing = crossing or crossing_graph(X)
    return sorted(contact.edges - crossing.edges)


# ---------------------------------------------------------------- dimension

def dimension(X: CubeComplex, crossing: HypGraph | None = None) -> int:
    """Largest set of pairwise-crossing hyperplanes (0 for a point)."""
    crossing = crossing or crossing_graph(X)
    return clique_number(crossing.graph)


def max_cube_at_vertices(X: CubeComplex) -> int:
    """Largest cube found by growing wall sets at each 0-cube and demanding
    every corner be present; independent of the crossing graph."""
    V = X.vertices
    best = 0

    def grow(v, corners, walls_left, size):
        nonlocal best
        best = max(best, size)
        for idx, w in enumerate(walls_left):
            m = 1 << w
            if all(c ^ m in V for c in corners):
                grow(v, corners + [c ^ m for c in corners], walls_left[idx + 1:], size + 1)

    for v in V:
        grow(v, [v], X.incident_walls(v), 0)
    return best


def degree(X: CubeComplex, contact: HypGraph | None = None) -> int:
    """Largest family of pairwise-contacting hyperplanes."""
    contact = contact or contact_graph(X)
    return clique_number(contact.graph)


def max_valence(X: CubeComplex) -> int:
    return max((len(X.incident_walls(v)) for v in X.vertices), default=0)


def max_clique_walls(g: HypGraph) -> tuple:
    return max_clique(g.graph)


# ---------------------------------------------------------------- convexity

def _check_connected_nonempty(X: CubeComplex, S: frozenset) -> None:
    if not S:
        raise InvalidInputError("empty vertex set")
    if not S <= X.vertices:
        raise InvalidInputError("vertex set contains non-vertices")
    if len(connected_components(X.skeleton, S)) != 1:
        raise InvalidInputError("vertex set is disconnected in the 1-skeleton")


def crossing_violation(X: CubeComplex, S) -> tuple | None:
    """Wall pair (i, j) showing S is not convex by the crossing criterion,
    or None.

    Checked at every corner: if v, v^i, v^j lie in S and X has the square
    on them, its fourth corner must lie in S.  Then globally: two walls that
    cross S and cross in X must cross inside S.  The corner form is needed
    because the induced subcomplex of a non-convex set (a cube minus one
    vertex, say) can realise every crossing somewhere.
    """
    S = frozenset(S)
    _check_connected_nonempty(X, S)
    V = X.vertices
    for v in sorted(S):
        inc = [i for i in X.walls if v ^ (1 << i) in S]
        for i, j in combinations(inc, 2):
            far = v ^ (1 << i) ^ (1 << j)
            if far in V and far not in S:
                return (i, j)
    crossing_S = [i for i in X.walls if any(v ^ (1 << i) in S for v in S)]
    for i, j in combinations(crossing_S, 2):
        if crosses_by_quarters(X, i, j):
            mi, mj = 1 << i, 1 << j
            if not any(v ^ mi in S and v ^ mj in S and v ^ mi ^ mj in S for v in S):
                return (i, j)
    return None


def geodesic_violation(X: CubeComplex, S) -> tuple | None:
    """(x, y, z) with x, y in S and z outside S on an x-y geodesic, or None."""
    S = frozenset(S)
    _check_connected_nonempty(X, S)
    dtype = np.int64 if X.num_walls < 63 else object
    inside = np.array(sorted(S), dtype=dtype)
    outside = np.array(sorted(X.vertices - S), dtype=dtype)
    if not len(outside):
        return None
    # z on a geodesic from x to y iff (z ^ x) is a sub-mask of (y ^ x)
    for x in inside:
        dy = inside ^ x
        dz = outside ^ x
        hit = (dz[None, :] & ~dy[:, None]) == 0
        if hit.any():
            a, b = np.argwhere(hit)[0]
            return (int(x), int(inside[a]), int(outside[b]))
    return None


def convexity_violation(X: CubeComplex, S) -> tuple | None:
    """Wall pair witnessing non-convexity, or None.  The geodesic criterion
    is evaluated too and must agree."""
    by_cross = crossing_violation(X, S)
    by_geo = geodesic_violation(X, S)
    if (by_cross is None) != (by_geo is None):
        raise InternalConsistencyError(f"convexity criteria disagree: crossing {by_cross}, geodesic {by_geo}")
    return by_cross


def is_convex(X: CubeComplex, S) -> bool:
    return convexity_violation(X, S) is None


# ---------------------------------------------------------------- Helly

@dataclass(frozen=True)
class HellyResult:
    common_vertex: int | None = None
    disjoint_pair: tuple | None = None


def helly_check(X: CubeComplex, family) -> HellyResult:
    family = [frozenset(Y) for Y in family]
    if not family:
        raise InvalidInputError("empty family")
    for idx, Y in enumerate(family):
        if not is_convex(X, Y):
            raise InvalidInputError(f"family member {idx} is not convex")
    for a, b in combinations(range(len(family)), 2):
        if not family[a] & family[b]:
            return HellyResult(disjoint_pair=(a, b))
    common = frozenset.intersection(*family)
    if not common:
        raise InternalConsistencyError("pairwise-intersecting convex family with empty intersection")
    return HellyResult(common_vertex=min(common))


# ---------------------------------------------------------------- separation

def inseparability_witness(X: CubeComplex, F) -> tuple | None:
    """(W1, W2, W3) with W3 outside F separating W1 from W2, or None."""
    F = sorted(set(F))
    if not F:
        raise InvalidInputError("empty hyperplane family")
    side = X.wall_side_table
    outside = [u for u in X.walls if u not in F]
    for a, b in combinations(F, 2):
        for u in outside:
            sa, sb = side[u][a], side[u][b]
            if sa is not None and sb is not None and sa != sb:
                return (a, b, u)
    return None


def is_inseparable(X: CubeComplex, F) -> bool:
    return inseparability_witness(X, F) is None


def facing_triples(X: CubeComplex) -> list[tuple]:
    """Triples of distinct walls, each pair lying in one halfspace of the third."""
    side = X.wall_side_table
    out = []
    for a, b, c in combinations(X.walls, 3):
        ok = True
        for u, p, q in ((a, b, c), (b, a, c), (c, a, b)):
            sp, sq = side[u][p], side[u][q]
            if sp is None or sq is None or sp != sq:
                ok = False
                break
        if ok:
            out.append((a, b, c))
    return out
