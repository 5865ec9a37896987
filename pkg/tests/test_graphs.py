import networkx as nx
import pytest
from hypothesis import given, strategies as st

from ccx.errors import InvalidInputError
from ccx.graphs import (
    Graph,
    bfs_distances,
    clique_number,
    complete_bipartite,
    complete_graph,
    connected_components,
    cycle_graph,
    find_isomorphism,
    is_isomorphic,
    join,
    max_clique,
    maximal_cliques,
    pair_isomorphic,
    path_graph,
    shortest_path,
)
from oracles import all_graphs_up_to_iso, brute_clique_number, canonical_form


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(range(n), chosen)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def test_rejects_loops_and_unknown_endpoints():
    with pytest.raises(InvalidInputError):
        Graph.from_edges([0, 1], [(0, 0)])
    with pytest.raises(InvalidInputError):
        Graph.from_edges([0, 1], [(0, 2)])


def test_join_of_k2_and_p3():
    g = join(complete_graph("ab"), path_graph("xyz"))
    assert len(g.edges) == 1 + 2 + 6


def test_graph_counts_on_small_vertex_sets():
    assert [len(all_graphs_up_to_iso(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


@given(graphs())
def test_bfs_matches_networkx(g):
    ref = dict(nx.single_source_shortest_path_length(to_nx(g), g.vertices[0]))
    assert bfs_distances(g, g.vertices[0]) == ref


@given(graphs())
def test_components_match_networkx(g):
    mine = sorted(sorted(c) for c in connected_components(g))
    ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert mine == ref


@given(graphs())
def test_clique_number_matches_brute_force(g):
    assert clique_number(g) == brute_clique_number(g)


@given(graphs())
def test_max_clique_is_a_lexicographically_least_maximum(g):
    c = max_clique(g)
    assert len(c) == brute_clique_number(g)
    assert all(g.has_edge(a, b) for i, a in enumerate(c) for b in c[i + 1:])
    best = min(tuple(sorted(k)) for k in nx.find_cliques(to_nx(g)) if len(k) == len(c))
    # every maximum clique is maximal, so the least one appears among them
    assert c == best


@given(graphs())
def test_maximal_cliques_match_networkx(g):
    ref = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_nx(g)))
    assert maximal_cliques(g) == ref


@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_isomorphism_under_relabelling(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    m = find_isomorphism(g, h)
    assert m is not None
    assert all(h.has_edge(m[u], m[v]) for u, v in g.edges)


@given(graphs(max_n=6), graphs(max_n=6))
def test_isomorphism_matches_canonical_form(g, h):
    assert is_isomorphic(g, h) == (canonical_form(g) == canonical_form(h))


@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_matches_networkx(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_regular_graphs_refinement_cannot_split():
    # C6 vs two triangles: same degrees everywhere, not isomorphic
    two_triangles = Graph.from_edges(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(cycle_graph(range(6)), two_triangles)
    assert is_isomorphic(complete_bipartite("ab", "xyz"), complete_bipartite([1, 2, 3], [4, 5]))


def test_pair_isomorphism_sees_the_subgraph():
    g = complete_graph(range(4))
    d1 = Graph.from_edges(range(4), [(0, 1), (2, 3)])
    d2 = Graph.from_edges(range(4), [(0, 1), (1, 2)])
    d3 = Graph.from_edges(range(4), [(1, 3), (0, 2)])
    assert not pair_isomorphic(g, d1, g, d2)
    assert pair_isomorphic(g, d1, g, d3)


def test_shortest_path_respects_removed_vertices():
    c = cycle_graph(range(6))
    assert shortest_path(c, 0, 3, removed={1}) == [0, 5, 4, 3]
    assert shortest_path(c, 0, 3, removed={1, 5}) is None
