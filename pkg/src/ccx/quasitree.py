"""Grading of hyperplanes by contact-graph distance, roots, the graded root
tree, and the quasi-tree certificates built on them: root diameters, the
bottleneck test, a quasi-isometry audit, and the precursor / footprint
checks.

Graphs here are plain ``Graph`` objects; pass ``contact_graph(X).graph``
(or the crossing graph for the diagnostic mode).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .config import DEFAULT_GEODESIC_CAP
from .errors import InternalConsistencyError, InvalidInputError, ResourceCapError
from .graphs import (
    Graph,
    all_pairs_distances,
    bfs_distances,
    connected_components,
    is_connected,
    set_diameter,
    shortest_path,
)
from .median_core import CubeComplex, carrier


# ---------------------------------------------------------------- grading

@dataclass(frozen=True)
class Grading:
    base: int
    grade: dict
    root_id: dict
    max_grade: int
    roots: tuple  # roots[r] = frozenset of members; root 0 is {base}

    def sphere(self, n: int) -> list:
        return sorted(v for v, g in self.grade.items() if g == n)

    def ball(self, n: int) -> frozenset:
        return frozenset(v for v, g in self.grade.items() if g <= n)

    def root_grade(self, r: int) -> int:
        return self.grade[next(iter(self.roots[r]))]


def grade_hyperplanes(G: Graph, base) -> Grading:
    """Grades are BFS levels from ``base``; the grade-n roots are the
    components of G minus the closed (n-1)-ball, cut down to the n-sphere."""
    if base not in G.adj:
        raise InvalidInputError(f"base {base!r} is not a vertex")
    if not is_connected(G):
        raise InvalidInputError("graph is disconnected")
    grade = bfs_distances(G, base)
    top = max(grade.values())
    roots = [frozenset([base])]
    for n in range(1, top + 1):
        outside = [v for v in G.vertices if grade[v] >= n]
        found = []
        for comp in connected_components(G, outside):
            members = frozenset(v for v in comp if grade[v] == n)
            if members:
                found.append(members)
        roots.extend(sorted(found, key=min))
    root_id = {}
    for r, members in enumerate(roots):
        for v in members:
            root_id[v] = r
    return Grading(base, grade, root_id, top, tuple(roots))


# ---------------------------------------------------------------- root tree

@dataclass(frozen=True)
class RootTree:
    grades: tuple  # grades[r] = grade of root r
    edges: frozenset  # pairs (r, s) with grade(s) = grade(r) + 1
    phi: dict  # hyperplane -> root id

    @property
    def graph(self) -> Graph:
        return Graph.from_edges(range(len(self.grades)), self.edges)


def graded_root_tree(grading: Grading, G: Graph) -> RootTree:
    grades = tuple(grading.root_grade(r) for r in range(len(grading.roots)))
    edges = set()
    for u, v in G.edges:
        ru, rv = grading.root_id[u], grading.root_id[v]
        gu, gv = grades[ru], grades[rv]
        if gu == gv:
            if ru != rv:
                raise InternalConsistencyError(f"edge {(u, v)} joins distinct roots of one grade")
        elif abs(gu - gv) == 1:
            edges.add((ru, rv) if gu < gv else (rv, ru))
        else:
            raise InternalConsistencyError(f"edge {(u, v)} skips a grade")
    T = RootTree(grades, frozenset(edges), dict(grading.root_id))
    n = len(grades)
    if len(edges) != n - 1 or not is_connected(T.graph):
        raise InternalConsistencyError(f"root graph with {n} nodes and {len(edges)} edges is not a tree")
    return T


def verify_root_diameter(grading: Grading, G: Graph, dist: dict | None = None) -> int:
    """Largest G-diameter of a root (distances measured in all of G)."""
    dist = dist or all_pairs_distances(G)
    return max(set_diameter(dist, members) for members in grading.roots)


# ---------------------------------------------------------------- bottleneck

@dataclass(frozen=True)
class BottleneckFailure:
    u: object
    v: object
    midpoint: tuple  # ("v", x) for a vertex, ("e", x, y) for an edge midpoint
    path: list  # u..v in G, avoiding the ball


def _subdivide(G: Graph) -> Graph:
    verts = [("v", x) for x in G.vertices] + [("e",) + e for e in G.sorted_edges()]
    edges = []
    for x, y in G.sorted_edges():
        edges += [(("v", x), ("e", x, y)), (("e", x, y), ("v", y))]
    return Graph.from_edges(verts, edges)


def bottleneck_check(G: Graph, delta) -> BottleneckFailure | None:
    """Manning's bottleneck test on vertex pairs at scale ``delta``.

    In the edge subdivision all distances double, so every midpoint is a
    vertex and the closed delta-ball becomes a closed (2 delta)-ball.  A
    pair passes when some midpoint's ball contains an endpoint or separates
    them.  Returns None on success, else the failure for the first pair.
    """
    delta = Fraction(delta)
    if delta < 0 or (2 * delta).denominator != 1:
        raise InvalidInputError("delta must be a nonnegative half-integer")
    if not is_connected(G):
        raise InvalidInputError("graph is disconnected")
    radius = int(2 * delta)
    S = _subdivide(G)
    sdist = {m: bfs_distances(S, m) for m in S.vertices}
    # component label of each subdivided vertex once the ball around m is removed
    labels = {}
    for m in S.vertices:
        ball = frozenset(x for x, d in sdist[m].items() if d <= radius)
        lab = {}
        for c, comp in enumerate(connected_components(S, set(S.vertices) - ball)):
            for x in comp:
                lab[x] = c
        labels[m] = (ball, lab)
    for u, v in combinations(G.vertices, 2):
        su, sv = ("v", u), ("v", v)
        d = sdist[su][sv]  # twice the G-distance
        mids = [m for m in S.vertices if 2 * sdist[m][su] == d and 2 * sdist[m][sv] == d]
        first_bad = None
        for m in mids:
            ball, lab = labels[m]
            if su in ball or sv in ball or lab[su] != lab[sv]:
                break
            if first_bad is None:
                first_bad = m
        else:
            ball, _ = labels[first_bad]
            removed = frozenset(x[1] for x in ball if x[0] == "v")
            # endpoints of a half-edge inside the ball stay, but that edge is cut
            cut = frozenset(x[1:] for x in ball if x[0] == "e")
            H = Graph.from_edges(G.vertices, [e for e in G.edges if e not in cut])
            path = shortest_path(H, u, v, removed)
            return BottleneckFailure(u, v, first_bad, path)
    return None


def minimal_bottleneck_delta(G: Graph) -> Fraction:
    """Least half-integer delta at which ``bottleneck_check`` passes."""
    n = len(G.vertices)
    delta = Fraction(0)
    while bottleneck_check(G, delta) is not None:
        delta += Fraction(1, 2)
        if delta > n:
            raise InternalConsistencyError("bottleneck test never passed")
    return delta


# ---------------------------------------------------------------- quasi-isometry

@dataclass(frozen=True)
class QIAudit:
    surjective: bool
    lipschitz: bool  # adjacent hyperplanes go to equal or adjacent nodes
    max_excess: int  # max of d_G - d_T
    max_deficit: int  # max of d_T - d_G
    pairs: int

    @property
    def constants(self) -> tuple:
        """(lambda, eps) with d_T <= d_G <= lambda * d_T + eps on every pair."""
        return (1, max(self.max_excess, 0))


def quasi_isometry_audit(G: Graph, T: RootTree, phi: dict | None = None) -> QIAudit:
    phi = T.phi if phi is None else phi
    dG = all_pairs_distances(G)
    dT = all_pairs_distances(T.graph)
    surjective = set(phi.values()) == set(range(len(T.grades)))
    lipschitz = all(dT[phi[u]][phi[v]] <= 1 for u, v in G.edges)
    excess = deficit = 0
    pairs = 0
    for u, v in combinations(G.vertices, 2):
        a, b = dG[u][v], dT[phi[u]][phi[v]]
        excess, deficit = max(excess, a - b), max(deficit, b - a)
        pairs += 1
    return QIAudit(surjective, lipschitz, excess, deficit, pairs)


# ---------------------------------------------------------------- precursors

def precursors(G: Graph, grading: Grading, U) -> frozenset:
    n = grading.grade[U]
    return frozenset(w for w in G.adj[U] if grading.grade[w] == n - 1)


def geodesics_from_base(G: Graph, grading: Grading, U, cap: int = DEFAULT_GEODESIC_CAP) -> list:
    """Every length-n path from the base to U (n = grade of U), by DFS
    backwards through the BFS layers.  Raises ResourceCapError past ``cap``."""
    out = []

    def back(path):
        x = path[-1]
        if x == grading.base:
            out.append(path[::-1])
            if len(out) > cap:
                raise ResourceCapError(f"more than {cap} geodesics to {U!r}", cap=cap)
            return
        for w in sorted(G.adj[x]):
            if grading.grade[w] == grading.grade[x] - 1:
                back(path + [w])

    back([U])
    return out


def common_precursors(G: Graph, grading: Grading, U1, U2, cap: int = DEFAULT_GEODESIC_CAP) -> frozenset:
    """Grade-(n-1) walls lying on every length-n path from the base to U1
    and on every such path to U2."""
    n = grading.grade[U1]
    if grading.grade[U2] != n or n < 1:
        raise InvalidInputError("common precursors need two walls of one positive grade")
    out = None
    for U in (U1, U2):
        for path in geodesics_from_base(G, grading, U, cap):
            hit = frozenset([path[n - 1]])
            out = hit if out is None else out & hit
    return out


@dataclass(frozen=True)
class PrecursorFailure:
    U1: object
    U2: object
    grade: int


def precursor_check(G: Graph, grading: Grading, cap: int = DEFAULT_GEODESIC_CAP) -> PrecursorFailure | None:
    """Every G-edge inside a sphere of grade n >= 2 has a common precursor
    or an edge-precursor.  Returns the first failing edge, or None."""
    for U1, U2 in sorted(G.edges):
        n = grading.grade[U1]
        if n < 2 or grading.grade[U2] != n:
            continue
        if common_precursors(G, grading, U1, U2, cap):
            continue
        p1, p2 = precursors(G, grading, U1), precursors(G, grading, U2)
        if any(w1 != w2 and G.has_edge(w1, w2) for w1 in p1 for w2 in p2):
            continue
        return PrecursorFailure(U1, U2, n)
    return None


# ---------------------------------------------------------------- footprints

@dataclass(frozen=True)
class Footprint:
    U: int
    ancestor: frozenset
    footprint: frozenset
    per_precursor: dict = field(default_factory=dict)  # W -> N(U) ∩ N(W)
    ancestor_connected: bool = True
    footprint_connected: bool = True


def _connected(X: CubeComplex, S: frozenset) -> bool:
    return bool(S) and len(connected_components(X.skeleton, S)) == 1


def footprint(X: CubeComplex, U: int, grading: Grading, G: Graph) -> Footprint:
    """Ancestor and footprint of a wall of positive grade, with connectivity
    of both in the 1-skeleton.  ``G`` is the contact graph grading came from."""
    if grading.grade[U] < 1:
        raise InvalidInputError("footprints are defined for walls of positive grade")
    NU = carrier(X, U)
    per = {W: NU & carrier(X, W) for W in sorted(precursors(G, grading, U))}
    anc = frozenset().union(*(carrier(X, W) for W in per))
    foot = frozenset().union(*per.values())
    return Footprint(U, anc, foot, per, _connected(X, anc), _connected(X, foot))


@dataclass(frozen=True)
class FootprintAdjacencyFailure:
    U1: int
    U2: int
    W: int
    contact: bool
    footprints_meet: bool


def footprint_adjacency_check(X: CubeComplex, grading: Grading, G: Graph, strict: bool = True,
                              cap: int = DEFAULT_GEODESIC_CAP) -> FootprintAdjacencyFailure | None:
    """U1 - U2 in G iff F(U1; W) and F(U2; W) meet, for same-grade U1, U2 and
    a common precursor W.  With ``strict=False`` any shared precursor
    qualifies as W."""
    for n in range(1, grading.max_grade + 1):
        for U1, U2 in combinations(grading.sphere(n), 2):
            if strict:
                shared = common_precursors(G, grading, U1, U2, cap)
            else:
                shared = precursors(G, grading, U1) & precursors(G, grading, U2)
            if not shared:
                continue
            N1, N2 = carrier(X, U1), carrier(X, U2)
            for W in sorted(shared):
                NW = carrier(X, W)
                meet = bool(N1 & NW & N2)
                if meet != G.has_edge(U1, U2):
                    return FootprintAdjacencyFailure(U1, U2, W, G.has_edge(U1, U2), meet)
    return None
