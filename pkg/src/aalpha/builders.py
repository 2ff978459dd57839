"""Greedy BFS-layered constructions of the extremal tree and unicyclic graph."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .graph import (
    BfsOrdering,
    DegreeSequence,
    GraphError,
    SequenceClass,
    SimpleGraph,
    bfs_heights,
    cycle_graph,
    from_edge_list,
    validate_degree_sequence,
)


class ConstructionError(GraphError):
    """The layered construction ran out of vertices or slots."""


@dataclass(frozen=True)
class LayeredConstruction:
    graph: SimpleGraph
    layers: tuple[tuple[int, ...], ...]
    assigned_degrees: tuple[int, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(v for layer in self.layers for v in layer)

    def bfs_ordering(self) -> BfsOrdering:
        return BfsOrdering.from_order(self.graph, self.order)

    def annotation(self) -> list[dict]:
        return [
            {"vertex": v, "height": t, "assigned_degree": self.assigned_degrees[v]}
            for t, layer in enumerate(self.layers)
            for v in layer
        ]

    def annotation_json(self) -> str:
        return json.dumps(self.annotation(), indent=1) + "\n"


def _require(pi: DegreeSequence, kind: SequenceClass):
    if pi.kind is not kind:
        raise GraphError(f"expected a {kind.value} sequence, got class {pi.kind.value}")
    verdict = validate_degree_sequence(pi)
    if not verdict.valid:
        raise GraphError(f"invalid {kind.value} sequence {pi}: {verdict.reason}")


def _layered(degrees, root_children, slots):
    """FIFO construction: vertex i gets degree ``degrees[i]``, labels follow BFS order.

    ``slots(v)`` is the number of children vertex ``v`` takes in the next layer.
    """
    n = len(degrees)
    edges = [(0, c) for c in range(1, root_children + 1)]
    height = [0] + [1] * root_children
    nxt = root_children + 1
    queue = deque(range(1, root_children + 1))
    while queue:
        v = queue.popleft()
        k = slots(v)
        if nxt + k > n:
            raise ConstructionError(f"vertex {v} needs {k} children but only {n - nxt} vertices remain")
        for c in range(nxt, nxt + k):
            edges.append((v, c))
            height.append(height[v] + 1)
            queue.append(c)
        nxt += k
    if nxt != n:
        raise ConstructionError(f"construction stopped after {nxt} of {n} vertices")
    layers: list[list[int]] = [[] for _ in range(max(height) + 1)]
    for v, t in enumerate(height):
        layers[t].append(v)
    return edges, tuple(tuple(l) for l in layers)


def extremal_tree_construction(pi: DegreeSequence) -> LayeredConstruction:
    _require(pi, SequenceClass.TREE)
    ds = pi.degrees
    edges, layers = _layered(ds, ds[0], lambda v: ds[v] - 1)
    g = from_edge_list(pi.n, edges)
    _check_realized(g, ds)
    return LayeredConstruction(g, layers, ds)


def build_extremal_tree(pi: DegreeSequence) -> SimpleGraph:
    """The tree on ``pi`` built greedily in BFS order; vertex i has degree ``pi[i]``."""
    return extremal_tree_construction(pi).graph


def extremal_unicyclic_construction(pi: DegreeSequence) -> LayeredConstruction:
    """Three cases on the two largest degrees.

    ``d_0 = 2`` gives the cycle.  Otherwise the root, its first two children
    and the edge between those children form the triangle; the two triangle
    children take ``d - 2`` further children, every other vertex ``d - 1``.
    When ``d_1 = 2`` this leaves ``d_0 - 2`` paths at the root whose lengths
    differ by at most one, since the FIFO hands out degree-2 vertices round
    robin.
    """
    _require(pi, SequenceClass.UNICYCLIC)
    ds, n = pi.degrees, pi.n
    if ds[0] == 2:
        g = cycle_graph(n)
        h = bfs_heights(g, 0)
        layers: list[list[int]] = [[] for _ in range(max(h) + 1)]
        for v in range(n):
            layers[h[v]].append(v)
        return LayeredConstruction(g, tuple(tuple(l) for l in layers), ds)

    def slots(v):
        return ds[v] - 2 if v in (1, 2) else ds[v] - 1

    edges, layers = _layered(ds, ds[0], slots)
    edges.append((1, 2))
    g = from_edge_list(n, edges)
    _check_realized(g, ds)
    return LayeredConstruction(g, layers, ds)


def build_extremal_unicyclic(pi: DegreeSequence) -> SimpleGraph:
    return extremal_unicyclic_construction(pi).graph


def _check_realized(g: SimpleGraph, ds):
    if g.degrees != tuple(ds):
        raise ConstructionError(f"realized degrees {g.degrees} differ from assigned {tuple(ds)}")


def attach_two_paths(g: SimpleGraph, w: int, k: int, s: int) -> SimpleGraph:
    """Hang a path on ``k`` new vertices and one on ``s`` new vertices at ``w``."""
    if not 0 <= w < g.n:
        raise GraphError(f"vertex {w} not in graph of order {g.n}")
    if k < 1 or s < 0:
        raise GraphError(f"need k >= 1 and s >= 0, got k={k}, s={s}")
    edges = list(g.edges)
    nxt = g.n
    for length in (k, s):
        prev = w
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return from_edge_list(nxt, edges)
