from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ccx.constructions import fixture, grid, path, product, random_wallspace, tree_complex, wedge
from ccx.errors import InvalidInputError
from ccx.graphs import complete_bipartite, complete_graph, is_connected, is_isomorphic, join, pair_isomorphic, path_graph
from ccx.hypgraphs import (
    HypGraph,
    contact_graph,
    convexity_violation,
    crossing_graph,
    crossing_violation,
    degree,
    dimension,
    facing_triples,
    geodesic_violation,
    helly_check,
    inseparability_witness,
    is_convex,
    is_inseparable,
    max_cube_at_vertices,
    osculations,
)
from ccx.median_core import carrier, interval, sageev_dual
from oracles import brute_convex, contact_by_carriers, crossing_by_squares


def relabel(g, names):
    return g.relabel(dict(zip(sorted(g.vertices), names)))


def test_tripod_graphs():
    T = fixture("tripod")
    assert is_isomorphic(contact_graph(T).graph, complete_graph(range(3)))
    assert not crossing_graph(T).edges
    assert dimension(T) == 1 and degree(T) == 3


def test_grid_2x3_graphs():
    X = grid(2, 3)
    assert is_isomorphic(crossing_graph(X).graph, complete_bipartite("ab", "xyz"))
    assert is_isomorphic(contact_graph(X).graph, join(complete_graph("ab"), path_graph("xyz")))
    assert dimension(X) == 2 and degree(X) == 4  # clique K2 + edge of P3


def test_tripod_times_segment_graphs():
    X = fixture("tripod-x-segment")
    assert is_isomorphic(crossing_graph(X).graph, complete_bipartite("ab", "xyz"))
    assert is_isomorphic(contact_graph(X).graph, join(complete_graph("ab"), complete_graph("xyz")))


def test_square_graphs():
    S = fixture("square")
    assert contact_graph(S).graph.edges == crossing_graph(S).graph.edges == {(0, 1)}
    assert dimension(S) == 2 and degree(S) == 2


def test_point_has_dimension_zero():
    P = fixture("point")
    assert dimension(P) == 0 and degree(P) == 0


def test_bad_kind():
    with pytest.raises(InvalidInputError):
        HypGraph(complete_graph([0]), "parallel")


def test_relations_match_oracles_on_corpus(full_corpus):
    for name, X in full_corpus.items():
        G, D = contact_graph(X), crossing_graph(X)
        assert set(G.edges) == contact_by_carriers(X), name
        assert set(D.edges) == crossing_by_squares(X), name
        assert D.edges <= G.edges
        assert set(osculations(X, G, D)) == set(G.edges - D.edges)
        if X.num_walls:
            assert is_connected(G.graph), name
        assert degree(X, G) >= dimension(X, D)
        assert dimension(X, D) == max_cube_at_vertices(X), name


def test_products_have_joined_contact_graphs():
    parts = [path(1), path(2), path(3), tree_complex((3,)), fixture("10gon-5squares")]
    for A, B in combinations(parts, 2):
        P = product(A, B)
        ga, gb = contact_graph(A).graph, contact_graph(B).graph
        k = A.num_walls
        expected = join(ga, gb.relabel({v: v + k for v in gb.vertices}))
        assert contact_graph(P).graph.edges == expected.edges


def test_gamma_delta_pairs_separate_the_k23_complexes():
    X, Y = grid(2, 3), fixture("tripod-x-segment")
    dx, dy = crossing_graph(X).graph, crossing_graph(Y).graph
    gx, gy = contact_graph(X).graph, contact_graph(Y).graph
    assert is_isomorphic(dx, dy)
    assert not pair_isomorphic(gx, dx, gy, dy)
    assert not is_isomorphic(X.skeleton, Y.skeleton)


def test_isomorphic_skeletons_have_isomorphic_pairs(small_corpus):
    items = [(k, X) for k, X in small_corpus.items() if len(X) <= 40]
    pairs = {k: (contact_graph(X).graph, crossing_graph(X).graph) for k, X in items}
    for (a, X), (b, Y) in combinations(items, 2):
        if len(X) == len(Y) and is_isomorphic(X.skeleton, Y.skeleton):
            assert pair_isomorphic(*pairs[a], *pairs[b]), (a, b)


def test_pair_does_not_determine_the_complex(full_corpus):
    # two 9-vertex random duals share (contact, crossing) up to isomorphism
    X, Y = full_corpus["random-2"], full_corpus["random-41"]
    gx, dx = contact_graph(X).graph, crossing_graph(X).graph
    gy, dy = contact_graph(Y).graph, crossing_graph(Y).graph
    assert pair_isomorphic(gx, dx, gy, dy)
    assert not is_isomorphic(X.skeleton, Y.skeleton)


# ---------------------------------------------------------------- convexity

def test_convexity_examples():
    S = fixture("square")
    assert not is_convex(S, {0, 1, 2})
    assert crossing_violation(S, {0, 1, 2}) == (0, 1)
    assert is_convex(S, S.vertices)
    with pytest.raises(InvalidInputError):
        is_convex(S, set())
    with pytest.raises(InvalidInputError):
        is_convex(S, {0, 3})


def test_cube_minus_a_corner_is_not_convex():
    # every wall pair crosses inside this set, but a corner is missing
    C = product(grid(1, 1), path(1))
    S = C.vertices - {0}
    assert crossing_violation(C, S) is not None
    assert geodesic_violation(C, S) is not None


def test_carriers_and_intervals_are_convex(full_corpus):
    for name, X in full_corpus.items():
        for i in X.walls:
            assert is_convex(X, carrier(X, i)), (name, i)
        if len(X) <= 40:
            vs = sorted(X.vertices)
            for u, v in zip(vs, vs[::-1]):
                assert is_convex(X, interval(X, u, v))


@given(st.integers(0, 300), st.data())
def test_convexity_matches_brute_force(seed, data):
    X = sageev_dual(random_wallspace(10, 6, seed))
    vs = sorted(X.vertices)
    # grow a random connected set
    S = {data.draw(st.sampled_from(vs))}
    for _ in range(data.draw(st.integers(0, len(vs)))):
        frontier = sorted({w for v in S for w in X.skeleton.adj[v]} - S)
        if not frontier:
            break
        S.add(data.draw(st.sampled_from(frontier)))
    assert (convexity_violation(X, S) is None) == brute_convex(X, S)


# ---------------------------------------------------------------- Helly

def test_helly_tripod_center():
    T = fixture("tripod")
    res = helly_check(T, [carrier(T, i) for i in T.walls])
    assert res.common_vertex == 0


def test_helly_reports_disjoint_pair_and_rejects_nonconvex():
    P = path(3)
    res = helly_check(P, [carrier(P, 0), carrier(P, 2)])
    assert res.disjoint_pair == (0, 1)
    with pytest.raises(InvalidInputError):
        helly_check(fixture("square"), [{0, 1, 2}])


@given(st.integers(0, 300), st.data())
def test_helly_on_random_halfspace_families(seed, data):
    X = sageev_dual(random_wallspace(10, 7, seed))
    fam = [X.halfspace(i, data.draw(st.integers(0, 1))) for i in X.walls]
    fam += [carrier(X, i) for i in X.walls if data.draw(st.booleans())]
    res = helly_check(X, fam)
    if res.common_vertex is not None:
        assert all(res.common_vertex in Y for Y in fam)
    else:
        a, b = res.disjoint_pair
        assert not fam[a] & fam[b]


# ---------------------------------------------------------------- separation

def test_inseparability_and_facing():
    T = fixture("tripod")
    assert is_inseparable(T, T.walls)
    assert facing_triples(T) == [(0, 1, 2)]
    assert facing_triples(grid(2, 3)) == []
    P = path(3)
    assert facing_triples(P) == []
    assert inseparability_witness(P, [0, 2]) == (0, 2, 1)
    with pytest.raises(InvalidInputError):
        inseparability_witness(P, [])


def test_contact_families_are_inseparable(full_corpus):
    for X in full_corpus.values():
        for u, v in contact_graph(X).edges:
            assert is_inseparable(X, [u, v])


def test_wedge_contact_graph_meets_at_base():
    W = wedge(fixture("square"), fixture("square"))
    assert is_isomorphic(contact_graph(W).graph, complete_graph(range(4)))
    assert len(crossing_graph(W).edges) == 2
