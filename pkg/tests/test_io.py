import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_homotopy import Graph, Homotopy, VertexMap, are_isomorphic, emit_dot, emit_graph, parse_graph, product
from graph_homotopy.errors import ParseError
from graph_homotopy.io import (
    graph_to_doc,
    homotopy_from_doc,
    homotopy_to_doc,
    load_map,
    load_walk,
    map_from_doc,
    map_to_doc,
    walk_to_doc,
)

from graphs import c4, exp_h, p2

H_DOC = b'{\n  "vertices": ["a", "b", "c"],\n  "edges": [["a", "a"], ["a", "b"], ["b", "c"], ["c", "c"]]\n}\n'


def test_round_trip_bytes():
    g = parse_graph(H_DOC)
    assert g == exp_h()
    assert emit_graph(g) == H_DOC
    assert parse_graph(emit_graph(g)) == g


def test_normalisation_of_edge_lists():
    messy = '{"vertices": ["a","b","c"], "edges": [["c","c"],["b","a"],["a","b"],["c","b"],["a","a"]]}'
    assert emit_graph(parse_graph(messy)) == H_DOC


def test_trivial_documents():
    assert parse_graph('{"vertices": [], "edges": []}').order == 0
    g = parse_graph('{"vertices": ["a"], "edges": [["a", "a"]]}')
    assert g.is_looped("a")
    assert parse_graph('{"vertices": [1, 2], "edges": [[1, 2]]}').adjacent("1", "2")


def test_distinct_diagnostics():
    with pytest.raises(ParseError) as bad_json:
        parse_graph('{"vertices": ["a",, "b"]}')
    with pytest.raises(ParseError) as dup:
        parse_graph('{"vertices": ["a", "b", "a"], "edges": []}')
    with pytest.raises(ParseError) as unknown:
        parse_graph('{"vertices": ["a"], "edges": [["a", "a"], ["a", "q"]]}')
    assert bad_json.value.location == "line 1 column 19"
    assert dup.value.location == "graph.vertices[2]"
    assert unknown.value.location == "graph.edges[1]"
    messages = {str(e.value) for e in (bad_json, dup, unknown)}
    assert len(messages) == 3
    assert "duplicate" in str(dup.value) and "'q'" in str(unknown.value)


def test_structural_errors():
    for text in ('[]', '{"edges": []}', '{"vertices": "ab"}', '{"vertices": ["a"], "edges": [["a"]]}',
                 '{"vertices": [true]}', '{"vertices": ["a"], "edges": {}}'):
        with pytest.raises(ParseError):
            parse_graph(text)
    with pytest.raises(ParseError):
        parse_graph(b"\xff\xfe")


def test_dot_output():
    out = emit_dot(exp_h()).decode()
    assert out.splitlines()[0] == 'graph "G" {'
    assert '"a" -- "a";' in out and '"b" -- "c";' in out
    assert emit_dot(exp_h()) == emit_dot(parse_graph(H_DOC))


def test_tuple_vertices_are_stringified():
    g = product(p2(), p2())
    doc = json.loads(emit_graph(g))
    assert doc["vertices"][0] == "(a,a)"
    assert are_isomorphic(parse_graph(emit_graph(g)), g) is not None


def test_map_documents_with_relative_graph_refs(tmp_path):
    (tmp_path / "graphs").mkdir()
    (tmp_path / "graphs" / "c4.json").write_bytes(emit_graph(c4()))
    (tmp_path / "p2.json").write_bytes(emit_graph(p2()))
    doc = {"source": "graphs/c4.json", "target": "p2.json", "map": {"0": "b", "1": "a", "2": "b", "3": "c"}}
    (tmp_path / "f.json").write_text(json.dumps(doc))
    f = load_map(tmp_path / "f.json")
    assert f.word == "babc" and f.source == c4() and f.target == p2()


def test_map_documents_inline_and_round_trip():
    f = VertexMap.from_word(c4(), p2(), "babc")
    doc = map_to_doc(f)
    assert map_from_doc(json.loads(json.dumps(doc))) == f
    bad = dict(doc, map={"0": "b"})
    with pytest.raises(ParseError):
        map_from_doc(bad)
    bad = dict(doc, map={"0": "b", "1": "a", "2": "b", "3": "z"})
    with pytest.raises(ParseError):
        map_from_doc(bad)
    with pytest.raises(ParseError):
        map_from_doc({"map": {}})


def test_walk_documents(tmp_path):
    (tmp_path / "g.json").write_bytes(emit_graph(c4()))
    (tmp_path / "w.json").write_text(json.dumps({"graph": "g.json", "vertices": ["0", "1", "2"]}))
    w = load_walk(tmp_path / "w.json")
    assert w.vertices == ("0", "1", "2")
    assert walk_to_doc(w) == {"vertices": ["0", "1", "2"]}
    assert walk_to_doc(w, inline_graph=True)["graph"] == graph_to_doc(c4())
    (tmp_path / "bad.json").write_text(json.dumps({"graph": "g.json", "vertices": ["0", "9"]}))
    with pytest.raises(ParseError) as info:
        load_walk(tmp_path / "bad.json")
    assert info.value.location.endswith("vertices[1]")
    with pytest.raises(ParseError):
        load_walk(tmp_path / "missing.json")


def test_homotopy_documents():
    g, h = c4(), p2()
    alpha = Homotopy(tuple(VertexMap.from_word(g, h, x) for x in ("babc", "baba", "bcbc")))
    doc = json.loads(json.dumps(homotopy_to_doc(alpha)))
    assert homotopy_from_doc(doc, g, h) == alpha
    with pytest.raises(ParseError):
        homotopy_from_doc({"frames": "x"}, g, h)


@st.composite
def labelled_graphs(draw):
    names = draw(st.lists(st.text("abcxyz019", min_size=1, max_size=3), unique=True, max_size=6))
    pairs = [(u, v) for i, u in enumerate(names) for v in names[i:]]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=12)) if pairs else []
    return Graph(names, edges)


@settings(max_examples=200, deadline=None)
@given(labelled_graphs())
def test_emit_parse_identity(g):
    assert parse_graph(emit_graph(g)) == g
    assert emit_graph(parse_graph(emit_graph(g))) == emit_graph(g)
