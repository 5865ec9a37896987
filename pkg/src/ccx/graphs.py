"""Small immutable simple-graph type and the exact graph algorithms used
throughout: BFS metrics, components, cliques, and isomorphism search.

Vertices are arbitrary hashable, mutually sortable labels (wall indices in
practice).  Everything here is exact; sizes are desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable

from .errors import InvalidInputError


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        if len(vs) != len(self.vertices):
            raise InvalidInputError("duplicate vertex labels")
        known = set(vs)
        es = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise InvalidInputError(f"loop at vertex {u!r}")
            if u not in known or v not in known:
                raise InvalidInputError(f"edge {e!r} has an unknown endpoint")
            es.add(_pair(u, v))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable) -> "Graph":
        return cls(tuple(vertices), frozenset(_pair(*e) for e in edges))

    @cached_property
    def adj(self) -> dict:
        out = {v: set() for v in self.vertices}
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return {v: frozenset(nb) for v, nb in out.items()}

    def __len__(self):
        return len(self.vertices)

    def has_edge(self, u, v) -> bool:
        return _pair(u, v) in self.edges

    def degree(self, v) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def induced(self, subset: Iterable) -> "Graph":
        keep = set(subset)
        return Graph(tuple(keep), frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def relabel(self, mapping: dict) -> "Graph":
        return Graph.from_edges((mapping[v] for v in self.vertices),
                                ((mapping[u], mapping[v]) for u, v in self.edges))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return set(self.vertices) == set(other.vertices) and self.edges <= other.edges


# ---------------------------------------------------------------- builders

def complete_graph(labels) -> Graph:
    labels = list(labels)
    return Graph.from_edges(labels, combinations(labels, 2))


def path_graph(labels) -> Graph:
    labels = list(labels)
    return Graph.from_edges(labels, zip(labels, labels[1:]))


def cycle_graph(labels) -> Graph:
    labels = list(labels)
    return Graph.from_edges(labels, list(zip(labels, labels[1:])) + [(labels[-1], labels[0])])


def complete_bipartite(left, right) -> Graph:
    left, right = list(left), list(right)
    return Graph.from_edges(left + right, ((a, b) for a in left for b in right))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint-label join: all edges of both plus every cross pair."""
    if set(g.vertices) & set(h.vertices):
        raise InvalidInputError("join requires disjoint vertex labels")
    cross = ((a, b) for a in g.vertices for b in h.vertices)
    return Graph.from_edges(g.vertices + h.vertices, list(g.edges) + list(h.edges) + list(cross))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if set(g.vertices) & set(h.vertices):
        raise InvalidInputError("union requires disjoint vertex labels")
    return Graph.from_edges(g.vertices + h.vertices, list(g.edges) + list(h.edges))


# ---------------------------------------------------------------- metrics

def bfs_distances(g: Graph, source, removed: frozenset | set = frozenset()) -> dict:
    """Hop distances from ``source`` in ``g`` minus ``removed``."""
    if source in removed:
        return {}
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist and w not in removed:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> dict:
    return {v: bfs_distances(g, v) for v in g.vertices}


def shortest_path(g: Graph, u, v, removed=frozenset()) -> list | None:
    if u in removed or v in removed:
        return None
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for w in sorted(g.adj[x]):
            if w not in parent and w not in removed:
                parent[w] = x
                queue.append(w)
    if v not in parent:
        return None
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def connected_components(g: Graph, within: Iterable | None = None) -> list[frozenset]:
    """Components of the subgraph induced on ``within`` (default: all)."""
    pool = set(g.vertices if within is None else within)
    comps = []
    for v in sorted(pool):
        if not any(v in c for c in comps):
            seen = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for w in g.adj[x]:
                    if w in pool and w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(seen))
    return comps


def is_connected(g: Graph) -> bool:
    return len(g.vertices) <= 1 or len(bfs_distances(g, g.vertices[0])) == len(g.vertices)


def set_diameter(dist: dict, members: Iterable) -> int:
    """Max pairwise distance among ``members`` measured in the ambient graph."""
    members = list(members)
    return max((dist[a][b] for a, b in combinations(members, 2)), default=0)


# ---------------------------------------------------------------- cliques

def degeneracy_order(g: Graph) -> list:
    deg = {v: g.degree(v) for v in g.vertices}
    left = set(g.vertices)
    order = []
    while left:
        v = min(left, key=lambda x: (deg[x], x))
        order.append(v)
        left.remove(v)
        for w in g.adj[v]:
            if w in left:
                deg[w] -= 1
    return order


def clique_number(g: Graph, candidates: Iterable | None = None) -> int:
    """Exact maximum clique size by branch and bound.

    Vertices are processed in degeneracy order; each branch only looks at
    later neighbours, and is cut once it cannot beat the incumbent.
    """
    pool = set(g.vertices if candidates is None else candidates)
    if not pool:
        return 0
    order = [v for v in degeneracy_order(g) if v in pool]
    rank = {v: i for i, v in enumerate(order)}
    best = 1

    def expand(size, cand):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        for v in sorted(cand, key=rank.__getitem__):
            if size + len(cand) <= best:
                return
            cand = cand - {v}
            expand(size + 1, cand & g.adj[v])

    for v in order:
        later = frozenset(w for w in g.adj[v] if w in pool and rank[w] > rank[v])
        if 1 + len(later) > best:
            expand(1, later)
    return best


def max_clique(g: Graph) -> tuple:
    """A maximum clique; among those, the lexicographically least sorted tuple."""
    if not g.vertices:
        return ()
    omega = clique_number(g)
    chosen: list = []
    cand = set(g.vertices)
    for v in sorted(g.vertices):
        if v not in cand:
            continue
        rest = cand & g.adj[v]
        if len(chosen) + 1 + clique_number(g, rest) >= omega:
            chosen.append(v)
            cand = rest
            if len(chosen) == omega:
                break
    return tuple(chosen)


def maximal_cliques(g: Graph) -> list[tuple]:
    """Bron-Kerbosch with pivoting; cliques returned sorted."""
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(g.adj[u] & p))
        for v in sorted(p - g.adj[pivot]):
            bk(r | {v}, p & g.adj[v], x & g.adj[v])
            p = p - {v}
            x = x | {v}

    if g.vertices:
        bk(set(), set(g.vertices), set())
    return sorted(out)


# ---------------------------------------------------------------- isomorphism

def _joint_refine(g: Graph, h: Graph) -> tuple[dict, dict]:
    """Colour refinement (1-WL) run on both graphs with one shared palette,
    so equal colours mean the same thing on either side."""
    cg = {v: g.degree(v) for v in g.vertices}
    ch = {v: h.degree(v) for v in h.vertices}
    classes = len(set(cg.values()) | set(ch.values()))
    while True:
        sig_g = {v: (cg[v], tuple(sorted(cg[w] for w in g.adj[v]))) for v in g.vertices}
        sig_h = {v: (ch[v], tuple(sorted(ch[w] for w in h.adj[v]))) for v in h.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sig_g.values()) | set(sig_h.values())))}
        cg = {v: palette[s] for v, s in sig_g.items()}
        ch = {v: palette[s] for v, s in sig_h.items()}
        if len(palette) == classes:
            return cg, ch
        classes = len(palette)


def find_isomorphism(g: Graph, h: Graph, limit: int | None = None) -> dict | None:
    """Return a vertex bijection g -> h preserving adjacency, or None.

    Exhaustive backtracking over colour-refined candidate classes, so a
    None answer is a proof of non-isomorphism.
    """
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if not g.vertices:
        return {}
    cg, ch = _joint_refine(g, h)
    if sorted(cg.values()) != sorted(ch.values()):
        return None
    by_colour: dict = {}
    for v in h.vertices:
        by_colour.setdefault(ch[v], []).append(v)
    # assign rarest colour classes first, then neighbours of assigned ones
    order = []
    placed = set()
    remaining = sorted(g.vertices, key=lambda v: (len(by_colour[cg[v]]), v))
    while remaining:
        nxt = next((v for v in remaining if g.adj[v] & placed), remaining[0])
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    mapping: dict = {}
    used: set = set()
    steps = 0

    def extend(i):
        nonlocal steps
        if i == len(order):
            return True
        steps += 1
        if limit is not None and steps > limit:
            raise RuntimeError("isomorphism search limit exceeded")
        v = order[i]
        for w in by_colour[cg[v]]:
            if w in used:
                continue
            if all((h.has_edge(w, mapping[u])) == g.has_edge(v, u) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def pair_isomorphic(g1: Graph, d1: Graph, g2: Graph, d2: Graph) -> bool:
    """Isomorphism of graph pairs (G, D) with D a spanning subgraph of G.

    Encoded as one graph by subdividing every D-edge twice (an edge of G
    that is also in D becomes a path of length 3), which is exact because
    degrees separate original from subdivision vertices once refinement
    runs; we add a pendant tag to original vertices to make that certain.
    """
    return is_isomorphic(_encode_pair(g1, d1), _encode_pair(g2, d2))


def _encode_pair(g: Graph, d: Graph) -> Graph:
    verts = [("v", v) for v in g.vertices]
    edges = []
    for v in g.vertices:
        # two pendant tags distinguish originals from subdivision vertices
        verts += [("t", v, 0), ("t", v, 1)]
        edges += [(("v", v), ("t", v, 0)), (("v", v), ("t", v, 1))]
    for u, v in g.edges:
        if d.has_edge(u, v):
            a, b = ("s", u, v, 0), ("s", u, v, 1)
            verts += [a, b]
            edges += [(("v", u), a), (a, b), (b, ("v", v))]
        else:
            edges.append((("v", u), ("v", v)))
    return Graph.from_edges(verts, edges)
