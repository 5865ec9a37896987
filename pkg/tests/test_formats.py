import json

import pytest
from hypothesis import given, strategies as st

from ccx import formats
from ccx.constructions import corpus, grid, random_wallspace
from ccx.errors import InvalidInputError
from ccx.graphs import complete_bipartite


def test_complex_roundtrip_is_byte_stable(small_corpus):
    for X in small_corpus.values():
        text = formats.dump_complex(X)
        Y = formats.load_complex(text)
        assert Y.vertices == X.vertices
        assert formats.dump_complex(Y) == text


def test_complex_document_layout():
    doc = json.loads(formats.dump_complex(grid(1, 1)))
    assert doc == {"format": "ccx-complex-v1", "num_walls": 2, "vertices": ["00", "01", "10", "11"]}


@pytest.mark.parametrize("text, msg", [
    ("not json", "parse error"),
    ('{"format": "ccx-complex-v1", "num_walls": 2, "vertices": ["01", "00"]}', "base vertex"),
    ('{"format": "ccx-complex-v1", "num_walls": 2, "vertices": ["00", "1"]}', "length"),
    ('{"format": "ccx-complex-v1", "num_walls": 2, "vertices": ["00", "11"]}', "connected"),
    ('{"format": "ccx-graph-v1", "vertices": [], "edges": []}', "expected format"),
])
def test_bad_complex_documents(text, msg):
    with pytest.raises(InvalidInputError, match=msg):
        formats.load_complex(text)


@given(st.integers(0, 1000))
def test_wallspace_roundtrip(seed):
    ws = random_wallspace(8, 6, seed)
    text = formats.dump_wallspace(ws)
    ws2 = formats.load_wallspace(text)
    assert formats.dump_wallspace(ws2) == text
    assert set(ws2.walls) == set(ws.walls)


def test_graph_documents_reject_non_simple_input():
    with pytest.raises(InvalidInputError, match="non-simple"):
        formats.load_graph('{"format": "ccx-graph-v1", "vertices": ["a"], "edges": [["a", "a"]]}')
    with pytest.raises(InvalidInputError, match="non-simple"):
        formats.load_graph('{"format": "ccx-graph-v1", "vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}')


def test_graph_roundtrip_and_dot():
    g = complete_bipartite("ab", "xyz")
    g2 = formats.load_graph(formats.dump_graph(g))
    assert g2.edges == g.edges
    dot = formats.graph_to_dot(g, dashed=frozenset({("a", "x")}))
    assert '"a" -- "x" [style=dashed];' in dot
    assert dot.count("--") == 6


def test_corpus_is_deterministic():
    a = {k: formats.dump_complex(X) for k, X in corpus(random_count=5).items()}
    b = {k: formats.dump_complex(X) for k, X in corpus(random_count=5).items()}
    assert a == b
