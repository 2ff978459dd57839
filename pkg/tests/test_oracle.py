import json
import math

import networkx as nx
import numpy as np
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from aalpha.builders import build_extremal_tree
from aalpha.graph import (
    DegreeSequence,
    GraphError,
    SearchLimitError,
    canonical_form,
    classify,
    cycle_graph,
    degree_sequence,
    from_edge_list,
    path_graph,
)
from aalpha.oracle import (
    Verdict,
    VerificationReport,
    check_maximizer_structure,
    enumerate_trees,
    enumerate_unicyclic,
    extremal_search,
    labeled_tree_count,
    labeled_trees,
    prufer_sequences,
    tree_automorphism_count,
    tree_sequences,
    unicyclic_sequences,
    worker_count,
)

# class counts computed independently with networkx (nonisomorphic_trees / graph atlas)
TREE_COUNTS = {
    (2, 2, 1, 1): 1,
    (3, 2, 2, 1, 1, 1): 2,
    (3, 1, 1, 1): 1,
    (2, 2, 2, 1, 1): 1,
    (3, 3, 2, 1, 1, 1, 1): 2,
    (2, 2, 2, 2, 2, 1, 1): 1,
    (3, 2, 2, 2, 1, 1, 1): 3,
    (4, 3, 2, 1, 1, 1, 1, 1): 3,
}
UNICYCLIC_COUNTS = {
    (2, 2, 2): 1,
    (3, 2, 2, 1): 1,
    (3, 3, 2, 2, 1, 1): 4,
    (2, 2, 2, 2, 2, 2): 1,
    (4, 2, 2, 1, 1): 1,
    (3, 2, 2, 2, 1): 2,
    (3, 3, 2, 2, 2, 1, 1): 9,
}


def nxg(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.mark.parametrize("degrees, count", TREE_COUNTS.items(), ids=str)
def test_tree_class_counts(degrees, count):
    classes = list(enumerate_trees(DegreeSequence(degrees, "tree")))
    assert len(classes) == count
    keys = {canonical_form(t) for t in classes}
    assert len(keys) == count
    for a, b in zip(classes, classes[1:]):
        assert not nx.is_isomorphic(nxg(a), nxg(b))


@pytest.mark.parametrize("degrees, count", UNICYCLIC_COUNTS.items(), ids=str)
def test_unicyclic_class_counts(degrees, count):
    classes = list(enumerate_unicyclic(DegreeSequence(degrees, "unicyclic")))
    assert len(classes) == count
    for g in classes:
        assert classify(g)["is_unicyclic"] and g.degrees == degrees
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            assert not nx.is_isomorphic(nxg(a), nxg(b))


def test_c4_excluded_from_triangle_pendant_class():
    (g,) = enumerate_unicyclic(DegreeSequence((3, 2, 2, 1), "unicyclic"))
    assert g.m == 4 and not nx.is_isomorphic(nxg(g), nx.cycle_graph(4))


@pytest.mark.parametrize("degrees", [(3, 2, 2, 1, 1, 1), (3, 3, 2, 1, 1, 1, 1), (4, 2, 1, 1, 1, 1)])
def test_prufer_decode_matches_networkx(degrees):
    pi = DegreeSequence(degrees, "tree")
    seqs = prufer_sequences(pi)
    for row, t in zip(seqs, labeled_trees(pi)):
        ref = nx.from_prufer_sequence(row.tolist())
        assert set(map(tuple, map(sorted, ref.edges))) == set(t.edges)
        assert t.degrees == degrees


def test_automorphism_counts_match_networkx():
    for n in range(2, 10):
        for t in nx.nonisomorphic_trees(n):
            g = from_edge_list(n, t.edges)
            ref = sum(1 for _ in GraphMatcher(t, t).isomorphisms_iter())
            assert tree_automorphism_count(g) == ref


@pytest.mark.parametrize("n", range(2, 9))
def test_labeled_count_identity(n):
    for pi in tree_sequences(n):
        total = sum(math.factorial(n) // tree_automorphism_count(t) for t in enumerate_trees(pi))
        assert total == labeled_tree_count(pi)


def test_labeled_count_total_is_cayley():
    for n in range(2, 9):
        assert sum(labeled_tree_count(pi) for pi in tree_sequences(n)) == n ** (n - 2)


def test_sequence_lists():
    assert [str(p) for p in tree_sequences(4)] == ["3,1,1,1", "2,2,1,1"]
    assert [str(p) for p in unicyclic_sequences(4)] == ["3,2,2,1", "2,2,2,2"]
    assert all(p.n == 7 for p in unicyclic_sequences(7))


def test_enumeration_bounds():
    with pytest.raises(SearchLimitError):
        list(enumerate_trees(DegreeSequence((2,) * 9 + (1, 1), "tree")))
    with pytest.raises(SearchLimitError):
        list(enumerate_unicyclic(DegreeSequence((2,) * 9, "unicyclic")))
    with pytest.raises(GraphError):
        list(enumerate_trees(DegreeSequence((2, 2, 2), "unicyclic")))


def test_search_spider_example():
    pi = DegreeSequence.parse("3,2,2,1,1,1", "tree")
    rep = extremal_search(pi, 0.5)
    assert rep.verdict is Verdict.PASS and rep.class_size == 2
    assert rep.argmax_canonical == [canonical_form(build_extremal_tree(pi)).hex()]
    assert rep.gap > 0
    assert rep.claim == "tree-maximizer"


def test_search_cycle_and_case_c():
    rep = extremal_search(DegreeSequence((2,) * 6, "unicyclic"), 0.3)
    assert rep.class_size == 1 and rep.passed and rep.gap is None
    rep = extremal_search(DegreeSequence.parse("3,3,2,2,1,1", "unicyclic"), 0.0)
    assert rep.passed and rep.class_size == 4


def test_report_serialization():
    rep = extremal_search(DegreeSequence.parse("3,2,2,1,1,1", "tree"), 0.5)
    d = json.loads(rep.to_json())
    assert d["verdict"] == "Pass" and d["pi"] == [3, 2, 2, 1, 1, 1] and d["class"] == "tree"
    row = rep.csv_row().split(",")
    assert len(VerificationReport.CSV_HEADER.split(",")) == 8
    assert row[0] == "6" and row[-2] == "Pass"


def test_parallel_matches_sequential(monkeypatch):
    pi = DegreeSequence.parse("3,3,2,2,2,1,1", "unicyclic")
    seq = extremal_search(pi, 0.2, workers=1)
    par = extremal_search(pi, 0.2, workers=4)
    assert seq == par
    monkeypatch.setenv("AALPHA_THREADS", "3")
    assert worker_count() == min(3, __import__("os").cpu_count() or 1)
    monkeypatch.setenv("AALPHA_THREADS", "bogus")
    assert worker_count() == 1


def test_structure_examples():
    pi = DegreeSequence.parse("3,2,2,1,1,1", "tree")
    assert check_maximizer_structure(build_extremal_tree(pi), 0.5).ok
    assert check_maximizer_structure(cycle_graph(7), 0.4).ok
    spider = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5)])
    report = check_maximizer_structure(spider, 0.5)
    assert isinstance(report.violations, list)  # report only


def test_structure_path_ok_double_cherry_flagged():
    assert check_maximizer_structure(path_graph(7), 0.0).ok
    h = from_edge_list(8, [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7)])
    assert not check_maximizer_structure(h, 0.5).ok
