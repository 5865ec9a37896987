"""Building complexes: products, wedges, trees, grids, named fixtures,
random geometric wallspaces, realisation of a graph as a crossing graph,
and recubulation (osculations become crossings).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .config import DEFAULT_VERTEX_CAP
from .errors import InvalidInputError, ResourceCapError
from .graphs import Graph, connected_components, max_clique
from .median_core import CubeComplex, Wallspace, bits_to_str, sageev_dual


def _names(X: CubeComplex) -> tuple:
    return tuple(X.name(i) for i in X.walls)


def _named(X: CubeComplex, names) -> CubeComplex:
    return CubeComplex(X.num_walls, X.vertices, tuple(names) if names is not None else None)


def point() -> CubeComplex:
    return CubeComplex(0, frozenset([0]))


def rebase(X: CubeComplex, v: int) -> CubeComplex:
    """Same complex with 0-cube ``v`` as base (every bit read relative to v)."""
    if v not in X.vertices:
        raise InvalidInputError(f"unknown vertex {v}")
    return CubeComplex(X.num_walls, frozenset(x ^ v for x in X.vertices), X.wall_names)


def product(X: CubeComplex, Y: CubeComplex, prefixes=("a", "b")) -> CubeComplex:
    """Cartesian product; walls of X come first, then walls of Y."""
    k = X.num_walls
    verts = frozenset(x | (y << k) for x in X.vertices for y in Y.vertices)
    names = None
    if X.wall_names or Y.wall_names:
        names = [f"{prefixes[0]}{n}" for n in _names(X)] + [f"{prefixes[1]}{n}" for n in _names(Y)]
    return CubeComplex(k + Y.num_walls, verts, tuple(names) if names else None)


def wedge(X: CubeComplex, Y: CubeComplex, prefixes=("a", "b")) -> CubeComplex:
    """Glue X and Y at their base 0-cubes (the lexicographically first ones)."""
    k = X.num_walls
    verts = frozenset(X.vertices) | frozenset(y << k for y in Y.vertices)
    names = None
    if X.wall_names or Y.wall_names:
        names = [f"{prefixes[0]}{n}" for n in _names(X)] + [f"{prefixes[1]}{n}" for n in _names(Y)]
    return CubeComplex(k + Y.num_walls, verts, tuple(names) if names else None)


def wedge_all(parts, names=None) -> CubeComplex:
    out = point()
    for P in parts:
        out = wedge(out, P)
    return _named(out, names)


def path(n: int) -> CubeComplex:
    """Subdivided interval with n edges (n walls)."""
    if n < 0:
        raise InvalidInputError("path length must be nonnegative")
    return CubeComplex(n, frozenset((1 << j) - 1 for j in range(n + 1)))


def grid(n: int, m: int) -> CubeComplex:
    """Planar grid [0,n] x [0,m]: walls 0..n-1 vertical, n..n+m-1 horizontal."""
    if n < 0 or m < 0:
        raise InvalidInputError("grid sides must be nonnegative")
    return product(path(n), path(m))


def tree_from_parents(parent: list) -> CubeComplex:
    """Tree on nodes 0..len(parent) with parent[i] the parent of node i+1.
    Wall i is the edge above node i+1."""
    bits = [0]
    for i, p in enumerate(parent):
        if not 0 <= p <= i:
            raise InvalidInputError("parents must precede their children")
        bits.append(bits[p] | (1 << i))
    return CubeComplex(len(parent), frozenset(bits))


def tree_complex(branching) -> CubeComplex:
    """Tree whose nodes, in BFS order, have the given numbers of children
    (missing entries mean leaves).  ``(3,)`` is the tripod."""
    parent = []
    queue = [0]
    nodes = 1
    for pos, b in enumerate(branching):
        if b < 0:
            raise InvalidInputError("branching numbers must be nonnegative")
        if pos >= len(queue):
            raise InvalidInputError("branching sequence is longer than the tree")
        for _ in range(b):
            parent.append(queue[pos])
            queue.append(nodes)
            nodes += 1
    return tree_from_parents(parent)


def random_tree(n: int, seed: int) -> CubeComplex:
    """Uniform random labelled tree on n nodes (Prufer decoding), rooted at 0."""
    if n < 1:
        raise InvalidInputError("tree needs at least one node")
    if n <= 2:
        return path(n - 1)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    adj = {v: [] for v in range(n)}
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        adj[leaf].append(x)
        adj[x].append(leaf)
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    adj[u].append(w)
    adj[w].append(u)
    # relabel in BFS order from 0 so parents precede children
    order, parent_of = [0], {0: None}
    for v in order:
        for w in sorted(adj[v]):
            if w not in parent_of:
                parent_of[w] = v
                order.append(w)
    pos = {v: i for i, v in enumerate(order)}
    return tree_from_parents([pos[parent_of[v]] for v in order[1:]])


def ten_gon() -> CubeComplex:
    """Five squares around a central 0-cube; square i spans walls i, i+1 mod 5."""
    verts = {0} | {1 << i for i in range(5)} | {(1 << i) | (1 << ((i + 1) % 5)) for i in range(5)}
    return CubeComplex(5, frozenset(verts))


def random_wallspace(n_elements: int, n_walls: int, seed: int) -> Wallspace:
    """Random points in the unit square cut by random lines.  Lines with an
    empty side, or repeating another line's partition, are dropped."""
    if n_elements < 2 or n_walls < 0:
        raise InvalidInputError("need at least 2 elements and a nonnegative wall count")
    rng = random.Random(seed)
    pts = [(rng.random(), rng.random()) for _ in range(n_elements)]
    names = [f"p{i}" for i in range(n_elements)]
    seen = set()
    walls = []
    for _ in range(n_walls):
        (x0, y0), (x1, y1) = (rng.random(), rng.random()), (rng.random(), rng.random())
        plus = frozenset(names[i] for i, (x, y) in enumerate(pts)
                         if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) > 0)
        minus = frozenset(names) - plus
        if not plus or not minus or plus in seen or minus in seen:
            continue
        seen.add(plus)
        walls.append(plus)
    return Wallspace(tuple(names), tuple(walls), tuple(f"w{i}" for i in range(len(walls))))


# ---------------------------------------------------------------- realisation

@dataclass(frozen=True)
class AugmentedGraph:
    """Inflated vertex sets and the matching between them.

    ``inflation[v]`` lists a(v), b(v), then one slot per neighbour in sorted
    order; ``matching`` pairs slot (v, w) with slot (w, v) for each edge.
    """

    inflation: dict
    matching: tuple

    @property
    def elements(self) -> list:
        return [x for v in sorted(self.inflation) for x in self.inflation[v]]

    def partner(self) -> dict:
        out = {}
        for x, y in self.matching:
            out[x] = y
            out[y] = x
        return out


def augmented_graph(D: Graph) -> AugmentedGraph:
    inflation = {}
    for v in D.vertices:
        inflation[v] = [("a", v), ("b", v)] + [("s", v, w) for w in sorted(D.adj[v])]
    matching = tuple((("s", v, w), ("s", w, v)) for v, w in D.sorted_edges())
    return AugmentedGraph(inflation, matching)


def _realize_component(D: Graph, cap: int) -> CubeComplex:
    if len(D.vertices) == 1:
        return CubeComplex(1, frozenset([0, 1]))
    aug = augmented_graph(D)
    partner = aug.partner()
    label = {x: "|".join(map(str, x)) for x in aug.elements}
    walls = []
    for w in D.vertices:
        own = [x for x in aug.inflation[w] if x != ("b", w)]
        plus = set(own) | {partner[x] for x in own if x in partner}
        walls.append(frozenset(label[x] for x in plus))
    ws = Wallspace(tuple(label[x] for x in aug.elements), tuple(walls))
    return sageev_dual(ws, base=label[("b", D.vertices[0])], cap=cap)


def realize_crossing_graph(D: Graph, cap: int = DEFAULT_VERTEX_CAP) -> CubeComplex:
    """A complex whose crossing graph is D: one dual per component, wedged
    at base 0-cubes.  Wall i corresponds to the i-th vertex of D in sorted
    order of components, and is named by that vertex."""
    parts, order = [], []
    for comp in sorted(connected_components(D), key=min):
        sub = D.induced(comp)
        try:
            parts.append(_realize_component(sub, cap))
        except ResourceCapError as exc:
            clique = max_clique(sub)
            raise ResourceCapError(f"realisation exceeds vertex cap {cap}; component has clique {list(clique)}",
                                   cap=cap, detail=clique) from exc
        order.extend(sub.vertices)
    return wedge_all(parts, [str(v) for v in order] if order else None)


def recubulate(X: CubeComplex, cap: int = DEFAULT_VERTEX_CAP) -> CubeComplex:
    """Add the missing corner at every osculation point, then re-dualise the
    enlarged 0-skeleton.  Walls keep their indices and names."""
    V = X.vertices
    extra = set()
    for v in V:
        inc = X.incident_walls(v)
        for i, j in combinations(inc, 2):
            far = v ^ (1 << i) ^ (1 << j)
            if far not in V:
                extra.add(far)
    k = X.num_walls
    points = sorted(V | extra, key=lambda v: bits_to_str(v, k))
    labels = [bits_to_str(v, k) for v in points]
    walls = tuple(frozenset(lab for v, lab in zip(points, labels) if (v >> i) & 1) for i in range(k))
    ws = Wallspace(tuple(labels), walls, X.wall_names)
    return sageev_dual(ws, base="0" * k, cap=cap)


# ---------------------------------------------------------------- generation

FIXTURES = ("tripod", "square", "10gon-5squares", "tripod-x-segment", "grid-NxM", "path-N", "point")


def fixture(name: str) -> CubeComplex:
    if name == "tripod":
        return tree_complex((3,))
    if name == "square":
        return grid(1, 1)
    if name == "10gon-5squares":
        return ten_gon()
    if name == "tripod-x-segment":
        return product(tree_complex((3,)), path(2))
    if name == "point":
        return point()
    if name.startswith("grid-"):
        n, m = _ints(name[5:].replace("x", ","), 2, "grid-NxM")
        return grid(n, m)
    if name.startswith("path-"):
        (n,) = _ints(name[5:], 1, "path-N")
        return path(n)
    raise InvalidInputError(f"unknown fixture {name!r}")


def _ints(params: str, count: int | None, what: str) -> list:
    try:
        vals = [int(p) for p in params.split(",") if p.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"{what}: parameters must be integers") from exc
    if count is not None and len(vals) != count:
        raise InvalidInputError(f"{what}: expected {count} integers")
    return vals


def generate(kind: str, params: str = "", seed: int = 0, cap: int = DEFAULT_VERTEX_CAP) -> CubeComplex:
    """Deterministic generator.

    grid             "n,m"
    tree             "b0,b1,..." children per node in BFS order, or "random,N"
    wedge            "A,B" two fixture names, glued at base 0-cubes
    random-wallspace "elements,walls" random points cut by random lines
    fixture          a fixture name
    """
    if kind == "grid":
        n, m = _ints(params, 2, "grid")
        X = grid(n, m)
    elif kind == "tree":
        if params.startswith("random"):
            (n,) = _ints(params[len("random"):].lstrip(","), 1, "tree random")
            X = random_tree(n, seed)
        else:
            X = tree_complex(_ints(params, None, "tree"))
    elif kind == "wedge":
        names = [p.strip() for p in params.split(",")]
        if len(names) != 2:
            raise InvalidInputError("wedge: expected two fixture names")
        X = wedge(fixture(names[0]), fixture(names[1]))
    elif kind == "random-wallspace":
        n, k = _ints(params, 2, "random-wallspace")
        X = sageev_dual(random_wallspace(n, k, seed), cap=cap)
    elif kind == "fixture":
        X = fixture(params)
    else:
        raise InvalidInputError(f"unknown generator kind {kind!r}")
    if len(X) > cap:
        raise ResourceCapError(f"generated complex exceeds vertex cap {cap}", cap=cap)
    X.check_invariants()
    return X


def corpus(random_count: int = 50, max_vertices: int = 2000) -> dict:
    """Named complexes used by the audits: fixtures, paths, grids, wedges and
    seeded random duals.  Random seeds whose dual exceeds ``max_vertices``
    are skipped (deterministically) until ``random_count`` are collected."""
    out = {"point": point(), "tripod": fixture("tripod")}
    for n in range(1, 9):
        out[f"path-{n}"] = path(n)
    for n in range(1, 5):
        for m in range(n, 5):
            out[f"grid-{n}x{m}"] = grid(n, m)
    out["square"] = fixture("square")
    out["10gon-5squares"] = ten_gon()
    out["tripod-x-segment"] = fixture("tripod-x-segment")
    out["tree-2,2,2"] = tree_complex((2, 2, 2))
    out["tree-random-9"] = random_tree(9, seed=1)
    out["wedge-square-square"] = wedge(fixture("square"), fixture("square"))
    out["wedge-square-tripod"] = wedge(fixture("square"), fixture("tripod"))
    out["wedge-10gon-path-2"] = wedge(ten_gon(), path(2))
    out["wedge-grid-2x2-grid-1x2"] = wedge(grid(2, 2), grid(1, 2))
    seed = 0
    found = 0
    while found < random_count:
        n_el = 10 + 4 * (seed % 8)
        n_walls = 4 + seed % 13
        try:
            X = sageev_dual(random_wallspace(n_el, n_walls, seed), cap=max_vertices)
        except ResourceCapError:
            X = None
        if X is not None and X.num_walls >= 1:
            out[f"random-{seed}"] = X
            found += 1
        seed += 1
    return out
