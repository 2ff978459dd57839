"""Exhaustive enumeration of trees and unicyclic graphs with a prescribed degree sequence.

The enumerators feed a brute-force maximisation of the spectral radius which
is compared against the greedy builders.
"""

from __future__ import annotations

import enum
import json
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .builders import build_extremal_tree, build_extremal_unicyclic
from .graph import (
    DegreeSequence,
    GraphError,
    SearchLimitError,
    SequenceClass,
    SimpleGraph,
    bfs_heights,
    canonical_form,
    find_bfs_ordering,
    from_edge_list,
    is_connected,
    validate_degree_sequence,
)
from .spectrum import as_alpha, dense_spectral_radius, fmt15, spectral_radius

MAX_TREE_ORDER = 10
MAX_UNICYCLIC_ORDER = 8
ARGMAX_TOL = 1e-9

CLAIMS = {
    SequenceClass.TREE: "tree-maximizer",
    SequenceClass.UNICYCLIC: "unicyclic-maximizer",
}


def _partitions(total: int, parts: int, largest: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(largest, total - (parts - 1)), 0, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def tree_sequences(n: int) -> list[DegreeSequence]:
    if n < 2:
        return []
    return [DegreeSequence(p, SequenceClass.TREE) for p in _partitions(2 * (n - 1), n, n - 1)]


def unicyclic_sequences(n: int) -> list[DegreeSequence]:
    out = []
    for p in _partitions(2 * n, n, n - 1):
        pi = DegreeSequence(p, SequenceClass.UNICYCLIC)
        if validate_degree_sequence(pi).valid:
            out.append(pi)
    return out


# ---------------------------------------------------------------------------
# trees


def _multiset_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    counts = Counter(items)
    keys = sorted(counts)
    out: list[int] = []
    total = len(items)

    def rec():
        if len(out) == total:
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def prufer_sequences(pi: DegreeSequence) -> np.ndarray:
    """Every Pruefer sequence in which vertex i occurs ``d_i - 1`` times."""
    base = [v for v, d in enumerate(pi.degrees) for _ in range(d - 1)]
    rows = list(_multiset_permutations(base))
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(base))


def labeled_trees(pi: DegreeSequence) -> Iterator[SimpleGraph]:
    """All labelled trees where vertex i has degree ``pi[i]``."""
    _check_order(pi, SequenceClass.TREE, MAX_TREE_ORDER)
    n = pi.n
    seqs = prufer_sequences(pi)
    edges = _kernels.prufer_decode(seqs, n) if n > 1 else np.empty((1, 0, 2), dtype=np.int64)
    for row in edges:
        yield from_edge_list(n, row.tolist())


def _check_order(pi: DegreeSequence, kind: SequenceClass, bound: int):
    if pi.kind is not kind:
        raise GraphError(f"expected a {kind.value} sequence")
    verdict = validate_degree_sequence(pi)
    if not verdict.valid:
        raise GraphError(f"invalid sequence {pi}: {verdict.reason}")
    if pi.n > bound:
        raise SearchLimitError(f"{kind.value} enumeration is bounded to n <= {bound}, got {pi.n}")


def enumerate_trees(pi: DegreeSequence) -> Iterator[SimpleGraph]:
    """One representative per isomorphism class of trees with degree sequence ``pi``."""
    _check_order(pi, SequenceClass.TREE, MAX_TREE_ORDER)
    seen: set[bytes] = set()
    for t in labeled_trees(pi):
        key = canonical_form(t)
        if key not in seen:
            seen.add(key)
            yield t


def tree_automorphism_count(t: SimpleGraph) -> int:
    """|Aut(T)| from the centre-rooted subtree codes, independent of ``canonical_form``."""
    n = t.n
    if n <= 2:
        return 1 if n < 2 else 2
    deg = list(t.degrees)
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adjacency[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    centres = layer

    def code(v, parent):
        kids = [code(w, v) for w in t.adjacency[v] if w != parent]
        kids_codes = sorted(k[0] for k in kids)
        aut = math.prod(k[1] for k in kids)
        for mult in Counter(kids_codes).values():
            aut *= math.factorial(mult)
        return "(" + "".join(kids_codes) + ")", aut

    if len(centres) == 1:
        return code(centres[0], -1)[1]
    a, b = centres
    ca, aa = code(a, b)
    cb, ab = code(b, a)
    return aa * ab * (2 if ca == cb else 1)


def labeled_tree_count(pi: DegreeSequence) -> int:
    """Labelled trees on ``n`` vertices whose sorted degree sequence is ``pi``.

    The Pruefer count for one fixed assignment of degrees to labels is
    ``(n-2)! / prod (d_i - 1)!``; it is multiplied by the number of distinct
    assignments ``n! / prod_k m_k!`` where ``m_k`` counts entries equal to k.
    """
    n = pi.n
    fixed = math.factorial(n - 2) // math.prod(math.factorial(d - 1) for d in pi.degrees)
    assignments = math.factorial(n) // math.prod(math.factorial(m) for m in Counter(pi.degrees).values())
    return fixed * assignments


# ---------------------------------------------------------------------------
# unicyclic graphs


def labeled_realizations(degrees: Sequence[int]) -> Iterator[SimpleGraph]:
    """Every labelled simple graph where vertex i has degree ``degrees[i]``."""
    n = len(degrees)
    need = list(degrees)
    adj: list[set[int]] = [set() for _ in range(n)]

    def rec(v):
        while v < n and need[v] == 0:
            v += 1
        if v == n:
            yield from_edge_list(n, [(a, b) for a in range(n) for b in adj[a] if a < b])
            return
        pool = [w for w in range(v + 1, n) if need[w] > 0]
        r = need[v]
        if r > len(pool) or sum(need[w] for w in pool) < r:
            return
        for chosen in combinations(pool, r):
            for w in chosen:
                need[w] -= 1
                adj[v].add(w)
                adj[w].add(v)
            need[v] = 0
            yield from rec(v + 1)
            need[v] = r
            for w in chosen:
                need[w] += 1
                adj[v].discard(w)
                adj[w].discard(v)

    yield from rec(0)


def enumerate_unicyclic(pi: DegreeSequence) -> Iterator[SimpleGraph]:
    """One representative per isomorphism class of connected graphs with ``pi`` and n edges."""
    _check_order(pi, SequenceClass.UNICYCLIC, MAX_UNICYCLIC_ORDER)
    seen: set[bytes] = set()
    for g in labeled_realizations(pi.degrees):
        if not is_connected(g):
            continue
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            yield g


def enumerate_class(pi: DegreeSequence) -> list[SimpleGraph]:
    if pi.kind is SequenceClass.TREE:
        return list(enumerate_trees(pi))
    if pi.kind is SequenceClass.UNICYCLIC:
        return list(enumerate_unicyclic(pi))
    raise GraphError("enumeration covers tree and unicyclic sequences only")


def build_extremal(pi: DegreeSequence) -> SimpleGraph:
    if pi.kind is SequenceClass.TREE:
        return build_extremal_tree(pi)
    return build_extremal_unicyclic(pi)


# ---------------------------------------------------------------------------
# brute-force maximisation


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    TIE = "TieWithNonIsomorphic"


@dataclass
class VerificationReport:
    pi: DegreeSequence
    alpha: float
    class_size: int
    max_rho: float
    argmax_canonical: list[str]
    builder_rho: float
    builder_canonical: str
    verdict: Verdict
    gap: float | None
    solver_disagreement: float = 0.0
    claim: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pi"] = list(self.pi.degrees)
        d["class"] = self.pi.kind.value
        d["verdict"] = self.verdict.value
        for key in ("max_rho", "builder_rho"):
            d[key] = fmt15(d[key])
        d["gap"] = None if self.gap is None else fmt15(self.gap)
        d["solver_disagreement"] = float(f"{self.solver_disagreement:.3e}")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    CSV_HEADER = "n,pi,alpha,class_size,max_rho,builder_rho,verdict,gap"

    def csv_row(self) -> str:
        gap = "" if self.gap is None else repr(fmt15(self.gap))
        return ",".join([str(self.pi.n), f'"{self.pi}"', repr(self.alpha), str(self.class_size),
                         repr(fmt15(self.max_rho)), repr(fmt15(self.builder_rho)), self.verdict.value, gap])


def worker_count() -> int:
    env = os.environ.get("AALPHA_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cap))
        except ValueError:
            pass
    return 1


def _rho_pairs(graphs: Sequence[SimpleGraph], alpha: float, workers: int) -> list[tuple[float, float]]:
    def one(g):
        return spectral_radius(g, alpha).rho, dense_spectral_radius(g, alpha)

    if workers <= 1 or len(graphs) < 2:
        return [one(g) for g in graphs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, graphs))


def extremal_search(pi: DegreeSequence, alpha, classes: Sequence[SimpleGraph] | None = None,
                    workers: int | None = None) -> VerificationReport:
    """Compare the builder graph against the enumerated maximum of rho over the class."""
    a = as_alpha(alpha)
    classes = enumerate_class(pi) if classes is None else classes
    workers = worker_count() if workers is None else workers
    pairs = _rho_pairs(classes, a, workers)
    rhos = [p for p, _ in pairs]
    disagreement = max(abs(p - d) for p, d in pairs)
    keys = [canonical_form(g).hex() for g in classes]
    best = max(range(len(classes)), key=lambda i: rhos[i])
    max_rho = rhos[best]
    argmax = [keys[i] for i in range(len(classes)) if rhos[i] >= max_rho - ARGMAX_TOL]
    others = [r for i, r in enumerate(rhos) if i != best]
    gap = max_rho - max(others) if others else None

    builder = build_extremal(pi)
    b = spectral_radius(builder, a)
    disagreement = max(disagreement, abs(b.rho - dense_spectral_radius(builder, a)))
    bkey = canonical_form(builder).hex()
    if bkey in argmax and abs(b.rho - max_rho) <= ARGMAX_TOL:
        verdict = Verdict.PASS if len(argmax) == 1 else Verdict.TIE
    else:
        verdict = Verdict.FAIL
    return VerificationReport(pi, a, len(classes), max_rho, argmax, b.rho, bkey, verdict, gap,
                              disagreement, CLAIMS.get(pi.kind, ""))


def extremal_sweep(pi: DegreeSequence, alphas: Sequence[float], workers: int | None = None):
    classes = enumerate_class(pi)
    return [extremal_search(pi, a, classes, workers) for a in alphas]


def argmax_graphs(pi: DegreeSequence, alpha, classes: Sequence[SimpleGraph] | None = None) -> list[SimpleGraph]:
    a = as_alpha(alpha)
    classes = enumerate_class(pi) if classes is None else classes
    rhos = [spectral_radius(g, a).rho for g in classes]
    top = max(rhos)
    return [g for g, r in zip(classes, rhos) if r >= top - ARGMAX_TOL]


# ---------------------------------------------------------------------------
# structure of maximisers


@dataclass
class StructureReport:
    root: int
    order: list[int]
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_maximizer_structure(g: SimpleGraph, alpha, tie_tol: float = 1e-9) -> StructureReport:
    """Check the eigenvector/degree/height monotonicity that maximisers must satisfy.

    (a) sorting by Perron entry (ties by height) gives nonincreasing degrees and
        nondecreasing heights from the top vertex;
    (b) equal Perron entries carry equal degrees;
    (c) a BFS-ordering exists that is also nonincreasing in the Perron entries.
    """
    x = spectral_radius(g, alpha).perron
    deg = g.degrees
    by_entry = sorted(range(g.n), key=lambda v: -x[v])
    cluster = [0] * g.n
    rank = 0
    for prev, v in zip(by_entry, by_entry[1:]):
        if x[prev] - x[v] > tie_tol:
            rank += 1
        cluster[v] = rank
    top = [v for v in range(g.n) if cluster[v] == 0]
    root = max(top, key=lambda v: (deg[v], -v))
    h = bfs_heights(g, root)
    order = sorted(range(g.n), key=lambda v: (cluster[v], h[v], -deg[v], v))
    report = StructureReport(root, order)
    for a, b in zip(order, order[1:]):
        if deg[a] < deg[b]:
            report.violations.append(f"(a) degree rises from {a} (d={deg[a]}) to {b} (d={deg[b]})")
        if h[a] > h[b]:
            report.violations.append(f"(a) height drops from {a} (h={h[a]}) to {b} (h={h[b]})")
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if abs(x[a] - x[b]) <= tie_tol and deg[a] != deg[b]:
                report.violations.append(f"(b) equal entries at {a}, {b} but degrees {deg[a]} != {deg[b]}")
    if find_bfs_ordering(g, weights=x, tol=tie_tol) is None:
        report.violations.append("(c) no BFS-ordering consistent with the Perron vector")
    return report
