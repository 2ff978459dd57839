"""Simple undirected graphs, degree sequences, BFS-orderings and canonical forms.

Vertices are always labeled ``0..n-1``.  Graph objects are immutable; every
surgery helper returns a new graph.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

#: search bound for the backtracking routines (BFS-ordering search, canonical form)
MAX_SEARCH_ORDER = 12


class GraphError(ValueError):
    """Malformed graph input or a violated structural precondition."""


class SearchLimitError(GraphError):
    """Raised when an exhaustive routine is asked to run above its size bound."""


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError(f"adjacency has {len(self.adjacency)} rows, expected {self.n}")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise GraphError(f"self-loop at vertex {v}")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise GraphError(f"vertex {w} out of range 0..{self.n - 1}")
                if v not in self.adjacency[w]:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return from_edge_list(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def with_edges(self, removed: Iterable[tuple[int, int]] = (), added: Iterable[tuple[int, int]] = (),
                   n: int | None = None) -> "SimpleGraph":
        """Edge surgery. Removing a missing edge or adding a present one is an error."""
        n = self.n if n is None else n
        edge_set = {frozenset(e) for e in self.edges}
        for u, v in removed:
            e = frozenset((u, v))
            if e not in edge_set:
                raise GraphError(f"cannot remove missing edge ({u}, {v})")
            edge_set.remove(e)
        for u, v in added:
            e = frozenset((u, v))
            if u == v:
                raise GraphError(f"self-loop ({u}, {v})")
            if e in edge_set:
                raise GraphError(f"edge ({u}, {v}) already present")
            edge_set.add(e)
        return from_edge_list(n, [tuple(sorted(e)) for e in edge_set])


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
    """Build a graph on ``n`` vertices; duplicate pairs collapse to one edge."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a label outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return SimpleGraph(n, tuple(frozenset(s) for s in adj))


def path_graph(n: int) -> SimpleGraph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> SimpleGraph:
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> SimpleGraph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


# ---------------------------------------------------------------------------
# degree sequences


class SequenceClass(enum.Enum):
    TREE = "tree"
    UNICYCLIC = "unicyclic"
    GENERAL = "general"


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    kind: SequenceClass = SequenceClass.GENERAL

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "kind", SequenceClass(self.kind))
        ds = self.degrees
        if any(a < b for a, b in zip(ds, ds[1:])):
            raise GraphError(f"degree sequence {ds} is not nonincreasing")
        if any(d < 0 for d in ds):
            raise GraphError(f"negative degree in {ds}")
        if any(d == 0 for d in ds) and self.kind is not SequenceClass.GENERAL:
            raise GraphError("a zero degree is only allowed for class general")
        if sum(ds) % 2:
            raise GraphError(f"degree sum {sum(ds)} is odd")

    @classmethod
    def of(cls, degrees: Iterable[int], kind: SequenceClass | str = SequenceClass.GENERAL) -> "DegreeSequence":
        """Sort ``degrees`` into nonincreasing order and wrap them."""
        return cls(tuple(sorted((int(d) for d in degrees), reverse=True)), SequenceClass(kind))

    @classmethod
    def parse(cls, text: str, kind: SequenceClass | str) -> "DegreeSequence":
        """Parse a comma-separated literal such as ``"3,2,2,1,1,1"``."""
        tokens = [t.strip() for t in text.split(",")]
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            bad = next(t for t in tokens if not t.lstrip("-").isdigit())
            raise GraphError(f"malformed degree sequence {text!r}: bad token {bad!r}") from None
        if not values:
            raise GraphError("empty degree sequence")
        return cls.of(values, kind)

    @property
    def n(self) -> int:
        return len(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def __str__(self):
        return ",".join(map(str, self.degrees))


def degree_sequence(g: SimpleGraph) -> DegreeSequence:
    """Sorted degrees of ``g`` with the class inferred from the edge count and connectivity."""
    info = classify(g)
    if 0 in g.degrees:
        kind = SequenceClass.GENERAL
    elif info["is_tree"]:
        kind = SequenceClass.TREE
    elif info["is_unicyclic"]:
        kind = SequenceClass.UNICYCLIC
    else:
        kind = SequenceClass.GENERAL
    return DegreeSequence.of(g.degrees, kind)


def is_connected(g: SimpleGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def classify(g: SimpleGraph) -> dict[str, bool]:
    connected = is_connected(g)
    return {
        "connected": connected,
        "is_tree": connected and g.m == g.n - 1,
        "is_unicyclic": connected and g.m == g.n,
    }


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str
    notes: tuple[str, ...] = ()

    def __bool__(self):
        return self.valid


def validate_degree_sequence(pi: DegreeSequence) -> Verdict:
    """Decide whether ``pi`` is realizable within its class.

    Trees need ``sum = 2(n-1)`` and ``n >= 2``.  Unicyclic sequences need
    ``sum = 2n`` and ``n >= 3``; on top of that arithmetic test a simple graph
    needs ``d_0 <= n-1`` and a cycle needs at least three vertices of degree
    at least 2.  The last two guards are reported in ``notes`` whenever they
    are what rejects a sequence that passes the sum test.
    """
    ds, n, total = pi.degrees, pi.n, sum(pi.degrees)
    if any(d < 1 for d in ds):
        return Verdict(False, "every degree must be at least 1")
    if pi.kind is SequenceClass.TREE:
        if n < 2:
            return Verdict(False, f"a tree sequence needs n >= 2, got n = {n}")
        if total != 2 * (n - 1):
            return Verdict(False, f"degree sum {total} != 2(n-1) = {2 * (n - 1)}")
        return Verdict(True, f"degree sum {total} = 2(n-1)")
    if pi.kind is SequenceClass.UNICYCLIC:
        if n < 3:
            return Verdict(False, f"a unicyclic sequence needs n >= 3, got n = {n}")
        if total != 2 * n:
            return Verdict(False, f"degree sum {total} != 2n = {2 * n}")
        note = ("the degree-sum test alone accepts this sequence; it fails the simple-graph guard",)
        if ds[0] > n - 1:
            return Verdict(False, f"d_0 = {ds[0]} exceeds n-1 = {n - 1}", note)
        if ds[2] < 2:
            return Verdict(False, "fewer than three vertices of degree >= 2, no room for a cycle", note)
        return Verdict(True, f"degree sum {total} = 2n")
    return Verdict(False, "validation is defined for the tree and unicyclic classes only")


# ---------------------------------------------------------------------------
# heights and BFS-orderings


def bfs_heights(g: SimpleGraph, root: int) -> tuple[int, ...]:
    """Distance of every vertex to ``root``; raises on a disconnected graph."""
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range")
    h = [-1] * g.n
    h[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if h[w] < 0:
                h[w] = h[v] + 1
                queue.append(w)
    if -1 in h:
        raise GraphError(f"graph is disconnected: vertex {h.index(-1)} unreachable from {root}")
    return tuple(h)


@dataclass(frozen=True)
class BfsOrdering:
    order: tuple[int, ...]
    root: int
    heights: tuple[int, ...]

    @classmethod
    def from_order(cls, g: SimpleGraph, order: Sequence[int]) -> "BfsOrdering":
        order = tuple(order)
        return cls(order, order[0], bfs_heights(g, order[0]))


def _cross_pairs(g: SimpleGraph, h: Sequence[int]):
    """Edges ``(u, v)`` directed from height t to height t+1."""
    return [(u, v) for u in range(g.n) for v in g.adjacency[u] if h[v] == h[u] + 1]


def check_bfs_ordering(g: SimpleGraph, ordering: BfsOrdering) -> bool:
    order = ordering.order
    if sorted(order) != list(range(g.n)) or not order or order[0] != ordering.root:
        return False
    h = bfs_heights(g, ordering.root)
    if tuple(ordering.heights) != h:
        return False
    deg = g.degrees
    for a, b in zip(order, order[1:]):
        if h[a] > h[b] or deg[a] < deg[b]:
            return False
    pos = {v: i for i, v in enumerate(order)}
    cross = _cross_pairs(g, h)
    for u, v in cross:
        for x, y in cross:
            if h[u] != h[x] or u == x or v == y:
                continue
            if g.has_edge(u, y) or g.has_edge(x, v):
                continue
            if pos[u] < pos[x] and not pos[v] < pos[y]:
                return False
    return True


def find_bfs_ordering(g: SimpleGraph, weights: Sequence[float] | None = None,
                      tol: float = 1e-9) -> BfsOrdering | None:
    """Search for a BFS-ordering of ``g``.

    Roots range over the maximum-degree vertices.  The order is built layer by
    layer; inside a layer vertices are placed in nonincreasing degree and the
    cross-edge condition against the previous layer is imposed as precedence
    constraints, with backtracking when a later layer cannot be ordered.

    When ``weights`` is given the ordering must additionally be nonincreasing
    in weight (ties within ``tol`` are free), and the root must carry the
    maximum weight.
    """
    if g.n > MAX_SEARCH_ORDER:
        raise SearchLimitError(f"BFS-ordering search is bounded to n <= {MAX_SEARCH_ORDER}, got {g.n}")
    if g.n == 0:
        return None
    if not is_connected(g):
        raise GraphError("BFS-ordering requires a connected graph")
    deg = g.degrees
    w = [0.0] * g.n if weights is None else [float(x) for x in weights]
    top_deg = max(deg)
    top_w = max(w)
    for root in range(g.n):
        if deg[root] != top_deg or w[root] < top_w - tol:
            continue
        h = bfs_heights(g, root)
        layers: list[list[int]] = [[] for _ in range(max(h) + 1)]
        for v in range(g.n):
            layers[h[v]].append(v)
        if any(min(deg[v] for v in a) < max(deg[v] for v in b) for a, b in zip(layers, layers[1:])):
            continue
        if any(min(w[v] for v in a) < max(w[v] for v in b) - tol for a, b in zip(layers, layers[1:])):
            continue
        found = _order_layers(g, layers, h, deg, w, tol)
        if found is not None:
            return BfsOrdering(tuple(found), root, h)
    return None


def _order_layers(g, layers, h, deg, w, tol):
    failed: list[set] = [set() for _ in layers]

    def precedences(t, prev_order):
        # pairs (v, y) in layer t that the cross-edge condition forces v before y
        rank = {u: i for i, u in enumerate(prev_order)}
        down = {u: [v for v in g.adjacency[u] if h[v] == t] for u in prev_order}
        before: dict[int, set[int]] = {v: set() for v in layers[t]}
        for u in prev_order:
            for x in prev_order:
                if rank[u] >= rank[x]:
                    continue
                for v in down[u]:
                    for y in down[x]:
                        if v != y and not g.has_edge(u, y) and not g.has_edge(x, v):
                            before[y].add(v)
        return before

    def parents_key(t, layer_order):
        if t + 1 >= len(layers):
            return ()
        return tuple(v for v in layer_order if any(h[x] == t + 1 for x in g.adjacency[v]))

    def extend(t, prev_order):
        if t == len(layers):
            return []
        before = precedences(t, prev_order) if t else {layers[0][0]: set()}
        members = layers[t]
        for layer_order in _linear_extensions(members, before, deg, w, tol):
            key = parents_key(t, layer_order)
            if key in failed[t]:
                continue
            rest = extend(t + 1, layer_order)
            if rest is not None:
                return list(layer_order) + rest
            failed[t].add(key)
        return None

    return extend(0, [])


def _linear_extensions(members, before, deg, w, tol):
    """Orders of ``members`` that respect ``before`` and are nonincreasing in degree and weight."""
    placed: list[int] = []
    used: set[int] = set()

    def rec():
        if len(placed) == len(members):
            yield tuple(placed)
            return
        remaining = [v for v in members if v not in used]
        top_d = max(deg[v] for v in remaining)
        top_w = max(w[v] for v in remaining)
        for v in remaining:
            if deg[v] != top_d or w[v] < top_w - tol:
                continue
            if not before[v] <= used:
                continue
            placed.append(v)
            used.add(v)
            yield from rec()
            placed.pop()
            used.remove(v)

    yield from rec()


# ---------------------------------------------------------------------------
# canonical forms


def _refine(g: SimpleGraph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition (label-invariant)."""
    while True:
        cell_of = [0] * g.n
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                counts = [0] * len(cells)
                for x in g.adjacency[v]:
                    counts[cell_of[x]] += 1
                groups.setdefault(tuple(counts), []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _encode(g: SimpleGraph, order: Sequence[int]) -> int:
    code = 0
    for i in range(g.n):
        row = g.adjacency[order[i]]
        for j in range(i + 1, g.n):
            code = (code << 1) | (order[j] in row)
    return code


def canonical_form(g: SimpleGraph) -> bytes:
    """Isomorphism-invariant byte string of ``g``.

    Individualization-refinement over ordered partitions, keeping the
    lexicographically smallest upper-triangle adjacency encoding among all
    leaves.  Branches on mutual twins are skipped: swapping two vertices with
    the same neighbourhood is an automorphism fixing everything else, so their
    subtrees produce the same encodings.
    """
    n = g.n
    if n > MAX_SEARCH_ORDER:
        raise SearchLimitError(f"canonical form is bounded to n <= {MAX_SEARCH_ORDER}, got {n}")
    best = None
    stack = [_refine(g, [list(range(n))])] if n else []
    while stack:
        cells = stack.pop()
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = _encode(g, [c[0] for c in cells])
            if best is None or code < best:
                best = code
            continue
        reps: list[int] = []
        for v in cells[target]:
            nv = g.adjacency[v] - {v}
            if any(nv - {r} == g.adjacency[r] - {v} for r in reps):
                continue
            reps.append(v)
        for v in reversed(reps):
            rest = [x for x in cells[target] if x != v]
            stack.append(_refine(g, cells[:target] + [[v], rest] + cells[target + 1:]))
    nbits = n * (n - 1) // 2
    body = (best or 0).to_bytes((nbits + 7) // 8, "big")
    return n.to_bytes(1, "big") + body


def canonical_hex(g: SimpleGraph) -> str:
    return canonical_form(g).hex()


def is_isomorphic(g: SimpleGraph, other: SimpleGraph) -> bool:
    if g.n != other.n or g.m != other.m or sorted(g.degrees) != sorted(other.degrees):
        return False
    return canonical_form(g) == canonical_form(other)


# ---------------------------------------------------------------------------
# internal paths


def list_internal_paths(g: SimpleGraph) -> list[tuple[int, ...]]:
    """All paths whose ends have degree >= 3 and whose interior has degree 2.

    A path may close on itself (first vertex equal to the last) when it runs
    around a cycle hanging off a single branch vertex.  Single edges between
    two branch vertices count as paths with empty interior.
    """
    deg = g.degrees
    seen: set[tuple[int, ...]] = set()
    paths: list[tuple[int, ...]] = []
    for a in range(g.n):
        if deg[a] < 3:
            continue
        for b in g.neighbors(a):
            walk = [a, b]
            prev, cur = a, b
            while deg[cur] == 2:
                nxt = next(x for x in g.adjacency[cur] if x != prev)
                walk.append(nxt)
                prev, cur = cur, nxt
            if deg[cur] < 3:
                continue
            path = tuple(walk)
            key = min(path, path[::-1])
            if key not in seen:
                seen.add(key)
                paths.append(key)
    return sorted(paths)


def internal_path_edges(g: SimpleGraph) -> list[tuple[int, int]]:
    edges = {tuple(sorted(pair)) for p in list_internal_paths(g) for pair in zip(p, p[1:])}
    return sorted(edges)


# ---------------------------------------------------------------------------
# edge-list text format


def format_edge_list(g: SimpleGraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError):
        raise GraphError("edge list contains a non-integer token") from None
    if any(len(r) != 2 for r in rows[1:]):
        raise GraphError("every edge line must hold exactly two vertices")
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    return from_edge_list(n, pairs)


def read_edge_list(path) -> SimpleGraph:
    with open(path) as fh:
        return parse_edge_list(fh.read())
