"""Wallspaces, consistent orientations, the dual cube complex, and the
median-graph metric on its 1-skeleton.

A finite CAT(0) cube complex is stored as its set of 0-cubes.  Each 0-cube
is a Python int read as a bit vector over the walls: bit ``i`` is set when
the 0-cube lies on the far side of wall ``i`` from the base 0-cube, which
is always ``0``.  Edges are pairs at Hamming distance one; higher cubes are
never stored.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .config import DEFAULT_VERTEX_CAP
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    NotMedianError,
    ResourceCapError,
)
from .graphs import Graph, bfs_distances, is_connected

Hyperplane = int  # a wall index inside a CubeComplex


def bit(i: int) -> int:
    return 1 << i


def has_bit(v: int, i: int) -> bool:
    return (v >> i) & 1 == 1


def popcount(v: int) -> int:
    return v.bit_count()


def bits_to_str(v: int, k: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(k))


def str_to_bits(s: str) -> int:
    if any(ch not in "01" for ch in s):
        raise InvalidInputError(f"bad bitstring {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


# ---------------------------------------------------------------- wallspaces

@dataclass(frozen=True)
class Wallspace:
    """Finite ground set with walls given by their designated plus sides."""

    elements: tuple
    walls: tuple  # of frozensets of elements (plus sides)
    wall_names: tuple | None = None

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise InvalidInputError("wallspace needs at least one element")
        if len(set(elements)) != len(elements):
            dup = next(e for e in elements if elements.count(e) > 1)
            raise InvalidInputError(f"duplicate element id {dup!r}")
        known = frozenset(elements)
        walls = tuple(frozenset(w) for w in self.walls)
        seen = {}
        for i, plus in enumerate(walls):
            if not plus <= known:
                raise InvalidInputError(f"wall {i} mentions unknown elements {sorted(plus - known)}")
            if not plus or plus == known:
                raise InvalidInputError(f"empty halfspace in wall {i}")
            key = min(plus, known - plus, key=lambda s: sorted(s))
            if key in seen:
                raise InvalidInputError(f"duplicate wall: walls {seen[key]} and {i} induce the same partition")
            seen[key] = i
        if self.wall_names is not None and len(self.wall_names) != len(walls):
            raise InvalidInputError("wall_names length does not match walls")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "walls", walls)

    @property
    def num_walls(self) -> int:
        return len(self.walls)

    @cached_property
    def element_index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def plus_masks(self) -> tuple:
        idx = self.element_index
        return tuple(sum(1 << idx[e] for e in w) for w in self.walls)

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def halfspace_masks(self, base) -> list[tuple[int, int]]:
        """Per wall: (mask of side containing ``base``, mask of the other side)."""
        b = 1 << self.element_index[base]
        out = []
        for plus in self.plus_masks:
            minus = self.full_mask & ~plus
            out.append((plus, minus) if plus & b else (minus, plus))
        return out

    def walls_cross(self, i: int, j: int) -> bool:
        p, q = self.plus_masks[i], self.plus_masks[j]
        full = self.full_mask
        return all(x for x in (p & q, p & ~q & full, ~p & q & full, ~p & ~q & full))


def principal_orientation(ws: Wallspace, s, base=None) -> int:
    """Bits of the principal ultrafilter at element ``s``, relative to ``base``."""
    base = ws.elements[0] if base is None else base
    idx = ws.element_index
    sb, bb = 1 << idx[s], 1 << idx[base]
    return sum(1 << i for i, plus in enumerate(ws.plus_masks) if bool(plus & sb) != bool(plus & bb))


# ---------------------------------------------------------------- complexes

@dataclass(frozen=True)
class CubeComplex:
    """Finite CAT(0) cube complex stored by its 0-cubes (see module doc)."""

    num_walls: int
    vertices: frozenset
    wall_names: tuple | None = None

    def __post_init__(self):
        vs = frozenset(self.vertices)
        if 0 not in vs:
            raise InvalidInputError("the base 0-cube (all zeros) must be present")
        if self.num_walls < 0:
            raise InvalidInputError("negative wall count")
        top = 1 << self.num_walls
        bad = [v for v in vs if v < 0 or v >= top]
        if bad:
            raise InvalidInputError(f"vertex {bad[0]} has bits beyond num_walls")
        if self.wall_names is not None:
            names = tuple(self.wall_names)
            if len(names) != self.num_walls or len(set(names)) != len(names):
                raise InvalidInputError("wall_names must be unique and one per wall")
            object.__setattr__(self, "wall_names", names)
        object.__setattr__(self, "vertices", vs)

    # --- basic views

    base_index = 0

    def name(self, i: int) -> str:
        return self.wall_names[i] if self.wall_names else f"w{i}"

    @property
    def walls(self) -> range:
        return range(self.num_walls)

    @cached_property
    def ordered(self) -> tuple:
        """Vertices in canonical order: lexicographic on bitstrings."""
        return tuple(sorted(self.vertices, key=lambda v: bits_to_str(v, self.num_walls)))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.ordered)}

    def __len__(self):
        return len(self.vertices)

    def neighbors(self, v: int) -> list[int]:
        return [v ^ (1 << i) for i in range(self.num_walls) if v ^ (1 << i) in self.vertices]

    def incident_walls(self, v: int) -> list[int]:
        return [i for i in range(self.num_walls) if v ^ (1 << i) in self.vertices]

    @cached_property
    def skeleton(self) -> Graph:
        edges = [(v, v ^ (1 << i)) for v in self.vertices for i in range(self.num_walls)
                 if has_bit(v, i) and v ^ (1 << i) in self.vertices]
        return Graph.from_edges(self.vertices, edges)

    @cached_property
    def bit_matrix(self) -> np.ndarray:
        """Boolean (vertex, wall) matrix in canonical vertex order."""
        arr = np.zeros((len(self.ordered), self.num_walls), dtype=bool)
        for r, v in enumerate(self.ordered):
            for i in range(self.num_walls):
                arr[r, i] = (v >> i) & 1
        return arr

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """Hamming distances in canonical vertex order."""
        b = self.bit_matrix.astype(np.int32)
        ones = b.sum(axis=1)
        return (ones[:, None] + ones[None, :] - 2 * (b @ b.T)).astype(np.int32)

    @cached_property
    def quarter_counts(self) -> np.ndarray:
        """``q[a, b, i, j]`` = number of 0-cubes with bit i == a and bit j == b."""
        b = self.bit_matrix.astype(np.int64)
        nb = 1 - b
        q = np.empty((2, 2, self.num_walls, self.num_walls), dtype=np.int64)
        q[0, 0] = nb.T @ nb
        q[0, 1] = nb.T @ b
        q[1, 0] = b.T @ nb
        q[1, 1] = b.T @ b
        return q

    def quarter_realized(self, i: int, j: int, a: int, b: int) -> bool:
        return bool(self.quarter_counts[a, b, i, j] > 0)

    @cached_property
    def wall_side_table(self) -> tuple:
        """``table[u][v]``: halfspace of wall u (0 = base side) holding wall v,
        or None when u == v or the walls cross.  Read off the missing
        quarterspace, so it never looks at carriers."""
        k = self.num_walls
        q = self.quarter_counts
        table = [[None] * k for _ in range(k)]
        for u in range(k):
            for v in range(k):
                if u == v:
                    continue
                missing = [(a, b) for a in (0, 1) for b in (0, 1) if q[a, b, u, v] == 0]
                if missing:
                    table[u][v] = 1 - missing[0][0]
        return tuple(tuple(r) for r in table)

    def halfspace(self, i: int, side: int) -> frozenset:
        return frozenset(v for v in self.vertices if ((v >> i) & 1) == side)

    def check_invariants(self, median: bool = False) -> None:
        """Validate connectivity, separation, consistency (and optionally the
        exhaustive median test).  Raises InvalidInputError on violation."""
        if not is_connected(self.skeleton):
            raise InvalidInputError("vertex set is not connected under single-bit flips")
        q = self.quarter_counts
        for i in self.walls:
            if q[1, 1, i, i] == 0:
                raise InvalidInputError(f"wall {i} does not separate the vertex set")
        for v in self.vertices:
            pair = inconsistent_pair(self, v)
            if pair is not None:
                raise InvalidInputError(f"vertex {bits_to_str(v, self.num_walls)} orients walls {pair} apart")
        for i, j in combinations(self.walls, 2):
            # identical bipartitions would be one hyperplane
            if q[0, 1, i, j] == 0 and q[1, 0, i, j] == 0:
                raise InvalidInputError(f"walls {i} and {j} induce the same partition")
        if median:
            theta_classes(self.skeleton, base=0)


# ---------------------------------------------------------------- orientations

def inconsistent_pair(space, bits: int, base=None) -> tuple | None:
    """First wall pair whose chosen halfspaces are disjoint, or None.

    ``space`` is a Wallspace (halfspaces are element sets, bits relative to
    ``base``, default the first element) or a CubeComplex (halfspaces are
    0-cube sets, bits relative to the base 0-cube).
    """
    k = space.num_walls
    if bits < 0 or bits >> k:
        raise InvalidInputError(f"orientation has bits beyond {k} walls")
    if isinstance(space, Wallspace):
        base = space.elements[0] if base is None else base
        chosen = [hs[(bits >> i) & 1] for i, hs in enumerate(space.halfspace_masks(base))]
        for i, j in combinations(range(k), 2):
            if not chosen[i] & chosen[j]:
                return (i, j)
        return None
    q = space.quarter_counts
    for i, j in combinations(range(k), 2):
        if q[(bits >> i) & 1, (bits >> j) & 1, i, j] == 0:
            return (i, j)
    return None


def is_consistent(space, bits: int, base=None) -> bool:
    return inconsistent_pair(space, bits, base) is None


def orientation_from_string(s: str, num_walls: int) -> int:
    if len(s) != num_walls:
        raise InvalidInputError(f"orientation length {len(s)} != {num_walls} walls")
    return str_to_bits(s)


# ---------------------------------------------------------------- Sageev dual

def sageev_dual(ws: Wallspace, base=None, cap: int = DEFAULT_VERTEX_CAP) -> CubeComplex:
    """Canonical component of consistent orientations, grown by single flips
    from the principal ultrafilter at ``base`` (default: first element).

    Wall ``i`` may be flipped at ``f`` iff the newly chosen halfspace meets
    every other currently chosen halfspace.
    """
    base = ws.elements[0] if base is None else base
    if base not in ws.element_index:
        raise InvalidInputError(f"unknown base element {base!r}")
    hs = ws.halfspace_masks(base)
    k = ws.num_walls
    seen = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        chosen = [hs[i][(f >> i) & 1] for i in range(k)]
        for i in range(k):
            g = f ^ (1 << i)
            if g in seen:
                continue
            flipped = hs[i][1 - ((f >> i) & 1)]
            if all(flipped & chosen[j] for j in range(k) if j != i):
                seen.add(g)
                if len(seen) > cap:
                    raise ResourceCapError(f"dual complex exceeds vertex cap {cap}", cap=cap)
                queue.append(g)
    return CubeComplex(k, frozenset(seen), ws.wall_names)


def wallspace_of(X: CubeComplex) -> Wallspace:
    """The wallspace (0-cubes, hyperplane bipartitions) of a complex.

    Element ids are the canonical bitstrings; each wall's plus side is its
    far halfspace from the base 0-cube.
    """
    k = X.num_walls
    labels = {v: bits_to_str(v, k) for v in X.vertices}
    elements = tuple(labels[v] for v in X.ordered)
    walls = tuple(frozenset(labels[v] for v in X.vertices if has_bit(v, i)) for i in X.walls)
    return Wallspace(elements, walls, X.wall_names)


# ---------------------------------------------------------------- skeleta

def _graph_distance_matrix(g: Graph) -> tuple[list, np.ndarray]:
    order = list(g.vertices)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    d = np.full((n, n), -1, dtype=np.int32)
    for v in order:
        for w, dv in bfs_distances(g, v).items():
            d[pos[v], pos[w]] = dv
    return order, d


def median_violation(g: Graph) -> tuple | None:
    """Exhaustive triple check.  Returns (x, y, z, reason) for the first
    triple without exactly one median, or None for a median graph."""
    order, d = _graph_distance_matrix(g)
    n = len(order)
    if (d < 0).any():
        raise InvalidInputError("graph is not connected")
    for x in range(n):
        for y in range(x + 1, n):
            on_xy = d[x] + d[y] == d[x, y]  # over m
            # between[z, m] for pairs (y, z) and (x, z)
            b_yz = d[y][None, :] + d == d[y][:, None]
            b_xz = d[x][None, :] + d == d[x][:, None]
            counts = (on_xy[None, :] & b_yz & b_xz).sum(axis=1)
            for z in range(y + 1, n):
                if counts[z] != 1:
                    reason = "no median" if counts[z] == 0 else "multiple medians"
                    return (order[x], order[y], order[z], reason)
    return None


def theta_classes(g: Graph, base=None) -> tuple[CubeComplex, dict]:
    """Recognise ``g`` as the 1-skeleton of a CAT(0) cube complex.

    Runs the exhaustive median test, then groups edges by the bipartition
    {x : d(x,u) < d(x,v)} they induce; each class is a wall.  Returns the
    complex (base 0-cube = ``base``, default the least vertex) and the map
    from graph vertices to 0-cubes.  Raises NotMedianError with a witness.
    """
    if not g.vertices:
        raise InvalidInputError("empty graph")
    if not is_connected(g):
        raise InvalidInputError("graph is not connected")
    bad = median_violation(g)
    if bad is not None:
        raise NotMedianError(f"not a median graph: {bad[3]} for triple {bad[:3]}", bad)
    order, d = _graph_distance_matrix(g)
    pos = {v: i for i, v in enumerate(order)}
    base = order[0] if base is None else base
    b = pos[base]
    classes: dict = {}
    for u, v in g.sorted_edges():
        near_u = d[:, pos[u]] < d[:, pos[v]]
        base_side = near_u if near_u[b] else ~near_u
        key = base_side.tobytes()
        if key not in classes:
            classes[key] = (u, v, base_side)
    walls = list(classes.values())
    for u, v, side in walls:
        for half in (side, ~side):
            idx = np.flatnonzero(half)
            sub = d[np.ix_(idx, idx)]
            # z lies in I(x, y) iff d(x,z) + d(z,y) == d(x,y)
            for a_i, a in enumerate(idx):
                between = (d[a][None, :] + d[idx, :] == sub[a_i][:, None]).any(axis=0)
                if (between & ~half).any():
                    raise NotMedianError(f"wall of edge {(u, v)} has a non-convex side", (u, v))
    k = len(walls)
    mapping = {}
    for x in order:
        mapping[x] = sum(1 << i for i, (_, _, side) in enumerate(walls) if not side[pos[x]])
    for x, y in combinations(order, 2):
        if popcount(mapping[x] ^ mapping[y]) != d[pos[x], pos[y]]:
            raise NotMedianError("wall count does not reproduce graph distance", (x, y))
    X = CubeComplex(k, frozenset(mapping.values()))
    return X, mapping


# ---------------------------------------------------------------- metric

def _require(X: CubeComplex, *vs: int) -> None:
    for v in vs:
        if v not in X.vertices:
            raise InvalidInputError(f"unknown vertex {v!r}")


def distance(X: CubeComplex, u: int, v: int) -> int:
    _require(X, u, v)
    return popcount(u ^ v)


def bfs_distance(X: CubeComplex, u: int, v: int) -> int:
    """Hop distance in the implicit 1-skeleton (independent of bit counts)."""
    _require(X, u, v)
    return bfs_distances(X.skeleton, u)[v]


def median(X: CubeComplex, x: int, y: int, z: int) -> int:
    _require(X, x, y, z)
    m = (x & y) | (y & z) | (x & z)
    if m not in X.vertices:
        raise InternalConsistencyError(f"majority vote {m} left the vertex set")
    return m


def interval(X: CubeComplex, x: int, y: int) -> frozenset:
    """All 0-cubes on some geodesic from x to y."""
    _require(X, x, y)
    agree = ~(x ^ y)
    return frozenset(z for z in X.vertices if (z ^ x) & agree == 0)


def gate(X: CubeComplex, x: int, C: Iterable[int]) -> int:
    C = frozenset(C)
    if not C:
        raise InvalidInputError("gate into an empty set")
    _require(X, x, *C)
    best = min(popcount(x ^ c) for c in C)
    closest = [c for c in C if popcount(x ^ c) == best]
    if len(closest) != 1:
        raise InvalidInputError("gate not unique: target set is not convex")
    g = closest[0]
    for c in C:
        if popcount(x ^ c) != best + popcount(g ^ c):
            raise InvalidInputError("nearest point is not a gate: target set is not convex")
    return g


def carrier(X: CubeComplex, H: Hyperplane) -> frozenset:
    if not 0 <= H < X.num_walls:
        raise InvalidInputError(f"no hyperplane {H}")
    m = 1 << H
    return frozenset(v for v in X.vertices if v ^ m in X.vertices)


def side_of(X: CubeComplex, U: Hyperplane, A) -> int | None:
    """Halfspace of U (0 = base side) containing A, or None if A straddles U.

    ``A`` is a hyperplane index (resolved to its carrier) or a vertex set.
    """
    if isinstance(A, (int, np.integer)):
        if A == U:
            return None
        A = carrier(X, int(A))
    A = frozenset(A)
    if not A:
        raise InvalidInputError("empty vertex set")
    sides = {(v >> U) & 1 for v in A}
    return sides.pop() if len(sides) == 1 else None


def separates(X: CubeComplex, U: Hyperplane, A, B) -> bool:
    """True iff A and B lie in opposite open halfspaces of U.  A set that
    straddles U is never separated (see ``side_of`` for the flag)."""
    sa, sb = side_of(X, U, A), side_of(X, U, B)
    return sa is not None and sb is not None and sa != sb
