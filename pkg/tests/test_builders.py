import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aalpha.builders import (
    ConstructionError,
    attach_two_paths,
    build_extremal_tree,
    build_extremal_unicyclic,
    extremal_tree_construction,
    extremal_unicyclic_construction,
)
from aalpha.graph import (
    DegreeSequence,
    GraphError,
    check_bfs_ordering,
    classify,
    cycle_graph,
    degree_sequence,
    is_isomorphic,
    path_graph,
    star_graph,
    from_edge_list,
)
from aalpha.oracle import tree_sequences, unicyclic_sequences

TREE_SEQS = [pi for n in range(2, 11) for pi in tree_sequences(n)]
UNI_SEQS = [pi for n in range(3, 11) for pi in unicyclic_sequences(n)]


def T(text):
    return DegreeSequence.parse(text, "tree")


def U(text):
    return DegreeSequence.parse(text, "unicyclic")


def test_tree_examples():
    assert is_isomorphic(build_extremal_tree(T("3,1,1,1")), star_graph(3))
    assert is_isomorphic(build_extremal_tree(T("2,2,2,1,1")), path_graph(5))
    spider = from_edge_list(6, [(0, 1), (1, 3), (0, 2), (2, 4), (0, 5)])
    assert is_isomorphic(build_extremal_tree(T("3,2,2,1,1,1")), spider)


def test_tree_layers_for_spider():
    c = extremal_tree_construction(T("3,2,2,1,1,1"))
    assert c.layers == ((0,), (1, 2, 3), (4, 5))
    assert c.graph.edges == ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5))
    ann = json.loads(c.annotation_json())
    assert ann[0] == {"vertex": 0, "height": 0, "assigned_degree": 3}
    assert [r["height"] for r in ann] == [0, 1, 1, 1, 2, 2]


@pytest.mark.parametrize("pi", TREE_SEQS, ids=str)
def test_tree_builder_invariants(pi):
    c = extremal_tree_construction(pi)
    g = c.graph
    assert degree_sequence(g) == pi and classify(g)["is_tree"]
    assert g.degrees == pi.degrees  # vertex i carries d_i
    assert check_bfs_ordering(g, c.bfs_ordering())


def test_unicyclic_examples():
    assert is_isomorphic(build_extremal_unicyclic(U("2,2,2,2")), cycle_graph(4))
    tri_pendant = from_edge_list(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    assert is_isomorphic(build_extremal_unicyclic(U("3,2,2,1")), tri_pendant)
    assert is_isomorphic(build_extremal_unicyclic(U("2,2,2")), cycle_graph(3))


def test_unicyclic_case_c_structure():
    c = extremal_unicyclic_construction(U("3,3,2,2,1,1"))
    g = c.graph
    # root 0; children 1 (deg 3), 2 (deg 2), 3 (deg 2); triangle edge 1-2
    assert g.adjacency[0] == {1, 2, 3}
    assert g.has_edge(1, 2)
    assert g.degree(1) == 3 and g.degree(2) == 2 and g.degree(3) == 2
    assert g.adjacency[1] == {0, 2, 4} and g.adjacency[3] == {0, 5}


@pytest.mark.parametrize("pi", UNI_SEQS, ids=str)
def test_unicyclic_builder_invariants(pi):
    c = extremal_unicyclic_construction(pi)
    g = c.graph
    assert degree_sequence(g) == pi and classify(g)["is_unicyclic"]
    if pi[1] >= 3:
        assert check_bfs_ordering(g, c.bfs_ordering())


@pytest.mark.parametrize("pi", [pi for pi in UNI_SEQS if pi[0] >= 3 and pi[1] == 2], ids=str)
def test_hanging_paths_balanced(pi):
    g = build_extremal_unicyclic(pi)
    # strip the triangle {0, 1, 2}: the rest is d_0 - 2 paths hanging at the root
    lengths = []
    for start in g.adjacency[0] - {1, 2}:
        length, prev, cur = 1, 0, start
        while g.degree(cur) == 2:
            (cur,), prev = tuple(g.adjacency[cur] - {prev}), cur
            length += 1
        lengths.append(length)
    assert sum(lengths) == pi.n - 3
    assert max(lengths) - min(lengths) <= 1


def test_builders_reject_wrong_input():
    with pytest.raises(GraphError):
        build_extremal_tree(U("2,2,2,2"))
    with pytest.raises(GraphError):
        build_extremal_unicyclic(U("4,1,1"))


def test_attach_two_paths_examples():
    g = attach_two_paths(cycle_graph(3), 0, 2, 1)
    assert g.n == 6 and g.degree(0) == 4
    assert g.edges == ((0, 1), (0, 2), (0, 3), (0, 5), (1, 2), (3, 4))
    k = attach_two_paths(path_graph(2), 0, 1, 1)
    assert k.degree(0) == 3 and is_isomorphic(k, star_graph(3))
    with pytest.raises(GraphError):
        attach_two_paths(cycle_graph(3), 5, 1, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 7), st.integers(1, 6), st.integers(0, 6))
def test_attach_two_paths_degree_increase(n, k, s):
    base = cycle_graph(n)
    g = attach_two_paths(base, 0, k, s)
    assert g.degree(0) - base.degree(0) == (2 if s else 1)
    assert g.n == n + k + s and g.m == base.m + k + s


def test_construction_error_is_graph_error():
    assert issubclass(ConstructionError, GraphError)
