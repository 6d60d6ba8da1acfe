import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p3pack.constructions import base_graph
from p3pack.graph import (
    Graph,
    Graph6Error,
    GraphError,
    basic_queries,
    delete_edges,
    delete_vertices,
    edgelist_decode,
    edgelist_encode,
    from_edge_list,
    graph6_decode,
    graph6_encode,
    graph_problems,
    relabel,
    subdivide_edge,
)

K4_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
PRISM_PAIRS = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edge_list(n, chosen)


def test_from_edge_list_examples():
    K4 = from_edge_list(4, K4_PAIRS)
    assert K4.m == 6 and K4.is_cubic()
    empty = from_edge_list(3, [])
    assert empty.n == 3 and empty.m == 0
    prism = from_edge_list(6, PRISM_PAIRS)
    assert prism.degrees() == [3] * 6


def test_from_edge_list_collapses_duplicates_and_rejects_bad_pairs():
    assert from_edge_list(3, [(0, 1), (1, 0), (0, 1)]).m == 1
    with pytest.raises(GraphError):
        from_edge_list(3, [(1, 1)])
    with pytest.raises(GraphError):
        from_edge_list(3, [(0, 3)])


def test_graph_rejects_non_canonical_edges():
    with pytest.raises(GraphError):
        Graph(3, ((1, 0),))
    with pytest.raises(GraphError):
        Graph(3, ((0, 2), (0, 1)))


def test_labels_do_not_affect_equality():
    a = from_edge_list(4, K4_PAIRS, ["a", "b", "c", "d"])
    assert a == from_edge_list(4, K4_PAIRS)
    assert hash(a) == hash(from_edge_list(4, K4_PAIRS))


def test_graph6_known_strings():
    assert graph6_encode(from_edge_list(4, K4_PAIRS)) == "C~"
    # hand-packed: prism upper triangle column-major
    assert graph6_decode(graph6_encode(base_graph("prism"))) == base_graph("prism")
    # Petersen's standard graph6 string decodes to a cubic 10-vertex graph
    P = graph6_decode("IheA@GUAo")
    assert P.n == 10 and P.is_cubic()


@pytest.mark.parametrize("bad", ["", "   ", "C", "C~~", "C\x7f", ">>graph6<<", "~~"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        graph6_decode(bad)


def test_graph6_long_form_round_trip():
    n = 70
    G = from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])
    text = graph6_encode(G)
    assert text[0] == "~"
    assert graph6_decode(text) == G


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_graph6_round_trip(G):
    assert graph6_decode(graph6_encode(G)) == G


@settings(max_examples=100, deadline=None)
@given(graphs(12))
def test_edgelist_round_trip(G):
    assert edgelist_decode(edgelist_encode(G)) == G


def test_edgelist_header_mismatch():
    with pytest.raises(GraphError):
        edgelist_decode("3 2\n0 1\n")


def test_delete_vertices_examples():
    K4 = base_graph("K4")
    tri, remap = delete_vertices(K4, {3})
    assert tri.n == 3 and tri.m == 3 and remap == {0: 0, 1: 1, 2: 2}
    same, _ = delete_vertices(K4, set())
    assert same == K4


def test_delete_vertices_prism_leaves_four_cycle():
    # prism minus {0, 3} keeps 12, 45, 14, 25: the 4-cycle 1-2-5-4
    H, remap = delete_vertices(base_graph("prism"), {0, 3})
    assert H.n == 4
    assert set(H.edges) == {tuple(sorted((remap[u], remap[v]))) for u, v in [(1, 2), (4, 5), (1, 4), (2, 5)]}
    assert H.degrees() == [2, 2, 2, 2]


def test_subdivide_edge_examples():
    H, w = subdivide_edge(base_graph("K4"), (0, 1))
    assert H.n == 5 and H.degree(w) == 2 and H.degree(0) == 3 and H.degree(1) == 3
    C4, _ = subdivide_edge(from_edge_list(3, [(0, 1), (1, 2), (0, 2)]), (0, 1))
    assert C4.degrees() == [2, 2, 2, 2] and C4.is_connected()
    with pytest.raises(GraphError):
        subdivide_edge(base_graph("prism"), (0, 4))


def test_basic_queries():
    q = basic_queries(base_graph("K4"))
    assert q.is_cubic and q.residue6 == 4
    q = basic_queries(base_graph("prism"))
    assert q.is_cubic and q.residue6 == 0 and len(q.components) == 1
    q = basic_queries(base_graph("Y_base"))
    assert not q.is_cubic and q.degrees.count(1) == 3


@settings(max_examples=150, deadline=None)
@given(graphs(14), st.data())
def test_editing_preserves_invariants(G, data):
    S = data.draw(st.sets(st.integers(0, max(G.n - 1, 0)), max_size=G.n)) if G.n else set()
    H, remap = delete_vertices(G, S)
    assert graph_problems(H) == [] and H.n == G.n - len(S)
    assert all(remap[u] != remap[v] for u, v in G.edges if u in remap and v in remap)
    if G.m:
        e = data.draw(st.sampled_from(G.edges))
        H, w = subdivide_edge(G, e)
        assert graph_problems(H) == [] and H.n == G.n + 1 and H.m == G.m + 1
        assert delete_edges(G, [e]).m == G.m - 1
    perm = data.draw(st.permutations(range(G.n)))
    R = relabel(G, perm)
    assert graph_problems(R) == [] and sorted(R.degrees()) == sorted(G.degrees())
