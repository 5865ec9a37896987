"""Property-check suites run over every applicable configuration of one
input (all base hyperplanes, all triples, ...).  Each check returns a
``CheckResult``; a failed result carries a witness that the corresponding
library call reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import DEFAULT_GEODESIC_CAP
from .errors import InvalidInputError
from .graphs import Graph, all_pairs_distances, connected_components, is_isomorphic, maximal_cliques
from .hypgraphs import contact_graph, crossing_graph, helly_check
from .median_core import CubeComplex, bits_to_str, carrier, median_violation, sageev_dual, wallspace_of
from .quasitree import (
    bottleneck_check,
    footprint,
    footprint_adjacency_check,
    grade_hyperplanes,
    graded_root_tree,
    precursor_check,
    verify_root_diameter,
)

CHECKS = ("median", "quasi-tree", "precursors", "footprints", "helly", "duality-roundtrip")


@dataclass
class CheckResult:
    name: str
    passed: bool
    summary: str
    witness: dict | None = None
    data: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        doc = {"check": self.name, "passed": self.passed, "summary": self.summary}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.data:
            doc["data"] = self.data
        return doc


def _bits(X: CubeComplex, v: int) -> str:
    return bits_to_str(v, X.num_walls)


# ---------------------------------------------------------------- median

def check_median_graph(g: Graph) -> CheckResult:
    bad = median_violation(g)
    if bad is not None:
        x, y, z, reason = bad
        return CheckResult("median", False, f"{reason} for triple ({x}, {y}, {z})",
                           {"triple": [str(x), str(y), str(z)], "reason": reason})
    return CheckResult("median", True, f"median graph on {len(g)} vertices")


def check_median(X: CubeComplex) -> CheckResult:
    """1-skeleton passes the exhaustive median test, bit-count distance
    equals BFS distance, and majority vote equals the exhaustive median."""
    res = check_median_graph(X.skeleton)
    if not res.passed:
        return res
    order = X.ordered
    d = X.distance_matrix
    bfs = all_pairs_distances(X.skeleton)
    for a, u in enumerate(order):
        for b, v in enumerate(order):
            if bfs[u][v] != d[a, b]:
                return CheckResult("median", False, "bit-count distance differs from BFS distance",
                                   {"pair": [_bits(X, u), _bits(X, v)]})
    n = len(order)
    bm = X.bit_matrix
    for x in range(n):
        for y in range(x + 1, n):
            on_xy = d[x] + d[y] == d[x, y]
            # between[z, m]: m on geodesics x-y, y-z and x-z
            between = on_xy[None, :] & (d[y][None, :] + d == d[y][:, None]) & (d[x][None, :] + d == d[x][:, None])
            counts = between.sum(axis=1)
            found = between.argmax(axis=1)
            maj = (bm[x] & bm[y])[None, :] | (bm[y][None, :] & bm) | (bm[x][None, :] & bm)
            agree = (bm[found] == maj).all(axis=1) & (counts == 1)
            bad = np.flatnonzero(~agree[y + 1:])
            if len(bad):
                z = y + 1 + int(bad[0])
                return CheckResult("median", False, "majority vote differs from exhaustive median",
                                   {"triple": [_bits(X, order[i]) for i in (x, y, z)]})
    return CheckResult("median", True, f"median graph on {n} vertices; distances and medians agree")


# ---------------------------------------------------------------- quasi-tree

def check_quasi_tree(X: CubeComplex, delta=Fraction(3, 2)) -> CheckResult:
    if X.num_walls == 0:
        return CheckResult("quasi-tree", True, "no hyperplanes")
    G = contact_graph(X).graph
    dist = all_pairs_distances(G)
    worst = 0
    for b in G.vertices:
        grading = grade_hyperplanes(G, b)
        graded_root_tree(grading, G)  # raises if not a tree
        diam = verify_root_diameter(grading, G, dist)
        worst = max(worst, diam)
        if diam > 4:
            return CheckResult("quasi-tree", False, f"root diameter {diam} > 4 at base {X.name(b)}",
                               {"base": X.name(b), "diameter": diam})
    fail = bottleneck_check(G, delta)
    if fail is not None:
        return CheckResult("quasi-tree", False, f"bottleneck fails at delta {delta}",
                           {"u": X.name(fail.u), "v": X.name(fail.v), "midpoint": [str(m) for m in fail.midpoint],
                            "path": [X.name(w) for w in fail.path]})
    return CheckResult("quasi-tree", True, f"max root diameter {worst}; bottleneck delta <= {delta}",
                       data={"max_root_diameter": worst, "delta": str(delta)})


# ---------------------------------------------------------------- precursors

def _graded_component(G: Graph, base) -> Graph:
    comp = next(c for c in connected_components(G) if base in c)
    return G.induced(comp)


def check_precursors(X: CubeComplex, mode: str = "contact", cap: int = DEFAULT_GEODESIC_CAP) -> CheckResult:
    """Every sphere edge of grade >= 2 has a common precursor or an
    edge-precursor, for every base.  ``mode="crossing"`` runs the same test
    on the crossing graph (graded within the base's component)."""
    if mode not in ("contact", "crossing"):
        raise InvalidInputError(f"unknown mode {mode!r}")
    G = (contact_graph(X) if mode == "contact" else crossing_graph(X)).graph
    for b in G.vertices:
        H = _graded_component(G, b)
        fail = precursor_check(H, grade_hyperplanes(H, b), cap)
        if fail is not None:
            return CheckResult("precursors", False,
                               f"{mode} mode: edge {X.name(fail.U1)}-{X.name(fail.U2)} of grade {fail.grade} "
                               f"has no common precursor or edge-precursor (base {X.name(b)})",
                               {"base": X.name(b), "edge": [X.name(fail.U1), X.name(fail.U2)],
                                "grade": fail.grade, "mode": mode})
    return CheckResult("precursors", True, f"{mode} mode: all bases pass")


# ---------------------------------------------------------------- footprints

def check_footprints(X: CubeComplex, cap: int = DEFAULT_GEODESIC_CAP) -> CheckResult:
    G = contact_graph(X).graph
    for b in G.vertices:
        grading = grade_hyperplanes(G, b)
        for U in G.vertices:
            if grading.grade[U] == 0:
                continue
            fp = footprint(X, U, grading, G)
            if not (fp.ancestor_connected and fp.footprint_connected):
                return CheckResult("footprints", False, f"disconnected ancestor or footprint of {X.name(U)}",
                                   {"base": X.name(b), "U": X.name(U),
                                    "ancestor_connected": fp.ancestor_connected,
                                    "footprint_connected": fp.footprint_connected})
        for strict in (True, False):
            fail = footprint_adjacency_check(X, grading, G, strict=strict, cap=cap)
            if fail is not None:
                return CheckResult("footprints", False, "footprint adjacency biconditional fails",
                                   {"base": X.name(b), "U1": X.name(fail.U1), "U2": X.name(fail.U2),
                                    "W": X.name(fail.W), "strict": strict})
    return CheckResult("footprints", True, "ancestors and footprints connected; adjacency matches footprints")


# ---------------------------------------------------------------- Helly

def check_helly(X: CubeComplex) -> CheckResult:
    """Carriers of each maximal clique of the contact graph pairwise meet,
    so they must share a 0-cube."""
    if X.num_walls == 0:
        return CheckResult("helly", True, "no hyperplanes")
    G = contact_graph(X).graph
    cliques = maximal_cliques(G)
    for clique in cliques:
        res = helly_check(X, [carrier(X, w) for w in clique])
        if res.common_vertex is None:
            a, b = res.disjoint_pair
            return CheckResult("helly", False, "contacting carriers are disjoint",
                               {"walls": [X.name(clique[a]), X.name(clique[b])]})
    return CheckResult("helly", True, f"{len(cliques)} maximal contact cliques have a common 0-cube")


# ---------------------------------------------------------------- roundtrip

def check_duality_roundtrip(X: CubeComplex) -> CheckResult:
    """Dual of the complex's own wallspace, based at a non-base 0-cube when
    one exists, has an isomorphic 1-skeleton."""
    ws = wallspace_of(X)
    base = ws.elements[-1]
    Y = sageev_dual(ws, base=base, cap=max(len(X), 1) * 2)
    if Y.num_walls != X.num_walls or len(Y) != len(X) or not is_isomorphic(X.skeleton, Y.skeleton):
        return CheckResult("duality-roundtrip", False, "dual 1-skeleton is not isomorphic",
                           {"base": base, "vertices": [len(X), len(Y)]})
    return CheckResult("duality-roundtrip", True, f"dual at {base} has an isomorphic 1-skeleton")


# ---------------------------------------------------------------- driver

def check_suite(X: CubeComplex, which: str = "all", mode: str = "contact", delta=Fraction(3, 2),
                cap: int = DEFAULT_GEODESIC_CAP) -> list[CheckResult]:
    names = CHECKS if which == "all" else (which,)
    out = []
    for name in names:
        if name == "median":
            out.append(check_median(X))
        elif name == "quasi-tree":
            out.append(check_quasi_tree(X, delta))
        elif name == "precursors":
            out.append(check_precursors(X, mode, cap))
        elif name == "footprints":
            out.append(check_footprints(X, cap))
        elif name == "helly":
            out.append(check_helly(X))
        elif name == "duality-roundtrip":
            out.append(check_duality_roundtrip(X))
        else:
            raise InvalidInputError(f"unknown check {name!r}")
    return out
