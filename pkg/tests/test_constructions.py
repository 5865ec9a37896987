import random

import pytest
from hypothesis import given, strategies as st

from ccx.constructions import (
    augmented_graph,
    corpus,
    fixture,
    generate,
    grid,
    path,
    product,
    realize_crossing_graph,
    recubulate,
    tree_complex,
    wedge,
)
from ccx.errors import InvalidInputError, ResourceCapError
from ccx.formats import dump_complex
from ccx.graphs import Graph, complete_graph, is_isomorphic, path_graph
from ccx.hypgraphs import contact_graph, crossing_graph, degree, dimension
from oracles import all_graphs_up_to_iso, crossing_by_squares


def named_crossing_graph(X):
    """Crossing graph relabelled by wall names (as realisation names walls)."""
    D = crossing_graph(X).graph
    return D.relabel({i: X.wall_names[i] for i in D.vertices})


def random_graph(n, p, seed):
    rnd = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rnd.random() < p]
    return Graph.from_edges(range(n), edges)


# ---------------------------------------------------------------- basic builders

def test_grid_and_path_sizes():
    assert len(grid(2, 3)) == 12 and grid(2, 3).num_walls == 5
    assert len(path(4)) == 5
    assert len(product(path(2), path(3))) == len(grid(2, 3))


def test_tree_from_star_is_the_tripod():
    assert generate("tree", "3").vertices == fixture("tripod").vertices
    # children per node in BFS order: root and its two children get two each
    assert len(tree_complex((2, 2, 2))) == 7


def test_ten_gon_fixture():
    X = fixture("10gon-5squares")
    assert len(X) == 11 and X.num_walls == 5
    # five squares around one 0-cube
    center = [v for v in X.vertices if len(X.skeleton.adj[v]) == 5]
    assert len(center) == 1
    assert len(crossing_graph(X).edges) == 5


def test_wedge_is_glued_at_one_vertex():
    W = wedge(fixture("square"), fixture("tripod"))
    assert len(W) == 4 + 4 - 1 and W.num_walls == 5


# ---------------------------------------------------------------- realisation

def test_augmented_graph_invariants():
    D = path_graph("xyz")
    aug = augmented_graph(D)
    sets = [set(aug.inflation[v]) for v in D.vertices]
    assert [len(s) for s in sets] == [3, 4, 3]  # deg + 2
    assert not set.intersection(*sets)
    partner = aug.partner()
    for v in D.vertices:
        a, b, *slots = aug.inflation[v]
        assert a not in partner and b not in partner
        assert all(s in partner for s in slots)


@pytest.mark.parametrize("D", [
    complete_graph("ab"),
    Graph.from_edges("ab", []),
    path_graph("abc"),
    complete_graph("abcd"),
], ids=["K2", "2K1", "P3", "K4"])
def test_realisation_examples(D):
    X = realize_crossing_graph(D)
    X.check_invariants(median=True)
    assert named_crossing_graph(X).edges == D.edges
    assert set(crossing_graph(X).edges) == crossing_by_squares(X)


def test_k2_realisation_contains_a_square():
    X = realize_crossing_graph(complete_graph("ab"))
    assert dimension(X) == 2


def test_two_isolated_vertices_give_a_wedge_of_edges():
    X = realize_crossing_graph(Graph.from_edges("ab", []))
    assert len(X) == 3 and X.num_walls == 2


def test_empty_graph_gives_a_point():
    X = realize_crossing_graph(Graph.from_edges([], []))
    assert len(X) == 1


def test_realisation_on_all_small_graphs():
    for n in range(1, 6):
        for D in all_graphs_up_to_iso(n):
            X = realize_crossing_graph(D)
            assert is_isomorphic(crossing_graph(X).graph, D)
            assert named_crossing_graph(X).relabel({str(v): v for v in D.vertices}).edges == D.edges


@given(st.integers(6, 8), st.floats(0.1, 0.7), st.integers(0, 10_000))
def test_realisation_on_random_graphs(n, p, seed):
    D = random_graph(n, p, seed)
    X = realize_crossing_graph(D)
    assert is_isomorphic(crossing_graph(X).graph, D)


def test_realisation_cap_reports_clique():
    with pytest.raises(ResourceCapError) as info:
        realize_crossing_graph(complete_graph(range(6)), cap=20)
    assert list(info.value.detail) == list(range(6))


# ---------------------------------------------------------------- recubulation

def test_recubulated_tripod_has_a_three_cube():
    R = recubulate(fixture("tripod"))
    assert dimension(R) == 3
    assert len(crossing_graph(R).edges) == 3


def test_square_is_a_fixed_point():
    S = fixture("square")
    assert recubulate(S).vertices == S.vertices


def test_path_two_becomes_a_square():
    R = recubulate(path(2))
    assert len(R) == 4 and crossing_graph(R).edges == {(0, 1)}


def test_recubulation_on_corpus(full_corpus):
    for name, X in full_corpus.items():
        if len(X) > 400:
            continue
        R = recubulate(X)
        # walls keep their indices, so the identity is literal
        assert crossing_graph(R).graph.edges == contact_graph(X).graph.edges, name
        assert dimension(R) == degree(X), name


# ---------------------------------------------------------------- generation

@pytest.mark.parametrize("kind, params, seed", [
    ("grid", "2,3", 0),
    ("tree", "random,12", 4),
    ("tree", "2,1,3", 0),
    ("wedge", "square,tripod", 0),
    ("random-wallspace", "14,7", 11),
    ("fixture", "10gon-5squares", 0),
])
def test_generate_is_reproducible(kind, params, seed):
    a = dump_complex(generate(kind, params, seed))
    assert a == dump_complex(generate(kind, params, seed))


def test_generate_examples():
    assert len(generate("grid", "2,3")) == 12
    with pytest.raises(InvalidInputError):
        generate("grid", "2")
    with pytest.raises(InvalidInputError):
        generate("grid", "a,b")
    with pytest.raises(InvalidInputError):
        generate("blob")
    with pytest.raises(InvalidInputError):
        fixture("nonesuch")
    with pytest.raises(ResourceCapError):
        generate("grid", "4,4", cap=10)


def test_corpus_complexes_are_valid(full_corpus):
    assert len(full_corpus) >= 70
    assert sum(k.startswith("random-") for k in full_corpus) == 50
    for name, X in full_corpus.items():
        X.check_invariants()
        assert len(X) <= 2000, name


def test_corpus_random_count():
    assert sum(k.startswith("random-") for k in corpus(random_count=3)) == 3
