import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_homotopy import (
    Graph,
    VertexMap,
    are_isomorphic,
    complete_graph,
    coproduct,
    cycle_graph,
    enumerate_graphs,
    graphs_on,
    identity_map,
    induced_subgraph,
    is_morphism,
    looped_path_graph,
    neighborhood,
    path_graph,
    product,
)
from graph_homotopy.errors import (
    GraphError,
    InvalidMapError,
    InvalidParameterError,
    UnknownVertexError,
)
from graph_homotopy.graph import canonical_form, is_isomorphism, product_swap, remove_vertex

from graphs import brute_isomorphic, c4, edge_set, exp_g, exp_h, looped_edge, p2


def test_graph_basic_queries():
    g = Graph(["a", "b"], [("a", "b"), ("a", "a")])
    assert g.is_looped("a") and not g.is_looped("b")
    assert g.adjacent("b", "a")
    assert g.vertices == ("a", "b")
    assert g.size == 2


def test_edges_deduplicated_and_symmetric():
    g = Graph(["a", "b"], [("a", "b"), ("b", "a"), ("a", "b")])
    assert g.edges == [("a", "b")]
    assert g.adjacent("a", "b") and g.adjacent("b", "a")


def test_duplicate_vertex_and_unknown_endpoint_rejected():
    with pytest.raises(GraphError):
        Graph(["a", "a"], [])
    with pytest.raises(UnknownVertexError):
        Graph(["a"], [("a", "z")])


def test_vertex_map_must_be_total():
    g, h = exp_g(), exp_h()
    with pytest.raises(InvalidMapError):
        VertexMap(g, h, {"0": "a"})
    with pytest.raises(InvalidMapError):
        VertexMap(g, h, {"0": "a", "1": "z"})
    with pytest.raises(InvalidMapError):
        VertexMap(g, h, {"0": "a", "1": "b", "2": "c"})


def test_is_morphism_examples():
    g, h = exp_g(), exp_h()
    assert is_morphism(identity_map(complete_graph(2)))
    # looped 0 cannot land on the unlooped b
    assert not is_morphism(VertexMap(g, h, {"0": "b", "1": "a"}))
    assert is_morphism(VertexMap(g, h, {"0": "a", "1": "b"}))


def test_product_of_looped_edge_with_k2_is_c4():
    prod = product(looped_edge(), complete_graph(2))
    iso = are_isomorphic(prod, cycle_graph(4))
    assert iso is not None
    assert is_isomorphism(iso.forward) and is_isomorphism(iso.backward)


def test_product_with_looped_point_is_identity_like():
    pt = Graph(["*"], [("*", "*")])
    for g in (c4(), p2(), exp_h()):
        assert are_isomorphic(product(g, pt), g) is not None


def test_k2_times_k2_is_two_disjoint_edges():
    k = product(complete_graph(2), complete_graph(2))
    assert k.order == 4 and k.size == 2 and not k.looped_vertices()
    assert k.isolated_vertices() == []
    assert all(len(k.neighborhood(v)) == 1 for v in k.vertices)


def test_product_vertex_order_and_adjacency_rule():
    g, h = exp_g(), exp_h()
    prod = product(g, h)
    assert prod.vertices == tuple((v, w) for v in g.vertices for w in h.vertices)
    for (v1, w1), (v2, w2) in itertools.product(prod.vertices, repeat=2):
        expected = g.adjacent(v1, v2) and h.adjacent(w1, w2)
        assert prod.adjacent((v1, w1), (v2, w2)) == expected


def test_product_commutative_on_all_small_pairs():
    graphs = list(enumerate_graphs(3))
    for g, h in itertools.product(graphs, repeat=2):
        assert is_isomorphism(product_swap(g, h))
    reps = list(enumerate_graphs(2))
    for g, h in itertools.product(reps, repeat=2):
        assert are_isomorphic(product(g, h), product(h, g)) is not None


def test_product_associative_on_small_triples():
    reps = list(enumerate_graphs(3, up_to_isomorphism=True))
    for g, h, k in itertools.product(reps, repeat=3):
        left, right = product(product(g, h), k), product(g, product(h, k))
        f = VertexMap(left, right, [(a, (b, c)) for (a, b), c in left.vertices])
        assert is_isomorphism(f)


def test_looped_vertex_gives_inclusion_into_product():
    graphs = list(enumerate_graphs(3))
    for g, h in itertools.product(graphs[:40], repeat=2):
        gh = product(g, h)
        for w in h.looped_vertices():
            f = VertexMap(g, gh, [(v, w) for v in g.vertices])
            assert is_morphism(f)
            assert len(set(f.images)) == g.order


def test_coproduct_examples():
    k2 = complete_graph(2)
    u = coproduct(k2, k2)
    assert u.order == 4 and u.size == 2
    assert u.vertices == ("L:0", "L:1", "R:0", "R:1")
    e = coproduct(Graph(), c4())
    assert are_isomorphic(e, c4()) is not None
    big = coproduct(cycle_graph(5), cycle_graph(6))
    assert big.order == 11 and big.size == 11


def test_standard_families():
    assert are_isomorphic(path_graph(1), complete_graph(2)) is not None
    pt = looped_path_graph(0)
    assert pt.order == 1 and pt.is_looped("0")
    i2 = looped_path_graph(2)
    assert edge_set(i2) == {frozenset(p) for p in [("0", "1"), ("1", "2"), ("0",), ("1",), ("2",)]}
    with pytest.raises(InvalidParameterError):
        cycle_graph(2)
    with pytest.raises(InvalidParameterError):
        complete_graph(0)
    assert complete_graph(5).size == 10


def test_neighborhood_examples():
    g = p2()
    assert neighborhood(g, "c") == {"b"} == neighborhood(g, "a")
    iso = Graph(["a", "z"], [])
    assert neighborhood(iso, "z") == frozenset()
    assert neighborhood(exp_h(), "a") == {"a", "b"}
    with pytest.raises(UnknownVertexError):
        neighborhood(g, "q")


def test_induced_subgraph_examples():
    g = c4()
    assert induced_subgraph(g, g.vertices) == g
    assert induced_subgraph(g, []).order == 0
    assert are_isomorphic(remove_vertex(g, "0"), path_graph(2)) is not None
    with pytest.raises(UnknownVertexError):
        induced_subgraph(g, ["9"])


def test_isomorphism_examples():
    c5 = cycle_graph(5)
    labels = ["p", "q", "r", "s", "t"]
    random.Random(3).shuffle(labels)
    shuffled = Graph(labels, [(labels[i], labels[(i + 2) % 5]) for i in range(5)])
    iso = are_isomorphic(c5, shuffled)
    assert iso is not None and is_isomorphism(iso.forward)
    assert iso.backward @ iso.forward == identity_map(c5)
    assert are_isomorphic(c5, path_graph(4)) is None


def test_isomorphism_respects_loops():
    a = Graph(["0", "1"], [("0", "1"), ("0", "0")])
    b = Graph(["0", "1"], [("0", "1"), ("1", "1")])
    c = Graph(["0", "1"], [("0", "1"), ("1", "1"), ("0", "0")])
    assert are_isomorphic(a, b) is not None
    assert are_isomorphic(a, c) is None


def test_isomorphism_matches_brute_force_up_to_three_vertices():
    graphs = list(enumerate_graphs(3))
    for g, h in itertools.product(graphs, repeat=2):
        assert (are_isomorphic(g, h) is not None) == brute_isomorphic(g, h)


def test_canonical_form_matches_brute_force_up_to_three_vertices():
    graphs = list(enumerate_graphs(3))
    for g, h in itertools.product(graphs, repeat=2):
        assert (canonical_form(g) == canonical_form(h)) == brute_isomorphic(g, h)


@pytest.mark.parametrize("n, with_loops", [(4, True), (5, False)])
def test_isomorphism_matches_class_partition(n, with_loops):
    """Every labelled graph is isomorphic to its own class representative and
    to no other; classes come from the all-relabelings canonical form."""
    reps = {}
    for g in graphs_on(n, with_loops):
        reps.setdefault(canonical_form(g), g)
    rep_list = list(reps.items())
    for g in graphs_on(n, with_loops):
        key = canonical_form(g)
        for k, r in rep_list:
            iso = are_isomorphic(g, r)
            assert (iso is not None) == (k == key)
            if iso is not None:
                assert is_isomorphism(iso.forward)


@st.composite
def small_graphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    chosen = draw(st.lists(st.sampled_from(slots), unique=True)) if slots else []
    verts = [str(i) for i in range(n)]
    return Graph(verts, [(verts[i], verts[j]) for i, j in chosen])


@settings(max_examples=150, deadline=None)
@given(small_graphs(), st.randoms(use_true_random=False))
def test_isomorphism_finds_random_relabelings(g, rnd):
    labels = [f"v{i}" for i in range(g.order)]
    rnd.shuffle(labels)
    f = dict(zip(g.vertices, labels))
    h = Graph(sorted(labels), [(f[u], f[v]) for u, v in g.edges])
    iso = are_isomorphic(g, h)
    assert iso is not None and is_isomorphism(iso.forward)


@settings(max_examples=150, deadline=None)
@given(small_graphs(), small_graphs())
def test_isomorphism_agrees_with_brute_force_on_random_pairs(g, h):
    assert (are_isomorphic(g, h) is not None) == brute_isomorphic(g, h)


def test_enumerate_graph_counts():
    assert len(list(graphs_on(1, with_loops=True))) == 2
    assert len(list(graphs_on(2, with_loops=False))) == 2
    assert len(list(graphs_on(2, with_loops=True))) == 8
    assert len(list(enumerate_graphs(2, True, min_vertices=2))) == 8
    assert len(list(enumerate_graphs(2, True))) == 10


def test_enumerate_graphs_deterministic_and_distinct():
    a = list(enumerate_graphs(3))
    assert a == list(enumerate_graphs(3))
    assert len(set(a)) == len(a)
    iso = list(enumerate_graphs(3, up_to_isomorphism=True))
    for g, h in itertools.combinations(iso, 2):
        assert not brute_isomorphic(g, h)


def test_enumerate_graphs_cap():
    with pytest.raises(InvalidParameterError):
        list(enumerate_graphs(7))
