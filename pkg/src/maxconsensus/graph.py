"""Directed graphs with self-loops and their tropical adjacency matrices.

An edge ``(j, i)`` points from ``j`` to ``i``: node ``i`` hears node
``j``.  Nodes are labelled ``1..n`` and every node carries an implicit,
non-removable self-loop.
"""

from __future__ import annotations

import math
import operator
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionError, ParseError
from .tropical import TropicalAdjMatrix, mat_add

__all__ = [
    "INFINITE",
    "Digraph",
    "BlockForm",
    "from_edges",
    "adjacency",
    "dependency_graph",
    "neighbors",
    "p_neighbors",
    "distances_from",
    "strongly_connected_components",
    "is_strongly_connected",
    "diameter",
    "union_graph",
    "union_of_matrices",
    "is_jointly_strongly_connected",
    "reducible_block_form",
    "has_spanning_tree_rooted_at",
    "strong_bridges",
    "parse_edge_list",
    "format_edge_list",
    "to_dot",
]

INFINITE = math.inf


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"node count must be a positive integer, got {self.n!r}")
        edges = set()
        for e in self.edges:
            try:
                j, i = (operator.index(v) for v in e)
            except (TypeError, ValueError):
                raise ValueError(f"edge {e!r} is not a pair of node labels") from None
            if not (1 <= j <= self.n and 1 <= i <= self.n):
                raise ValueError(f"edge {e!r} has endpoint outside 1..{self.n}")
            edges.add((j, i))
        edges.update((v, v) for v in range(1, self.n + 1))
        object.__setattr__(self, "edges", frozenset(edges))

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def _in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for j, i in self.edges:
            masks[i - 1] |= 1 << (j - 1)
        return tuple(masks)

    @cached_property
    def _out_lists(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for j, i in sorted(self.edges):
            if j != i:
                out[j - 1].append(i)
        return tuple(tuple(x) for x in out)

    def successors(self, j: int) -> tuple[int, ...]:
        """Nodes that hear ``j``, self excluded."""
        _check_node(self, j)
        return self._out_lists[j - 1]

    def sorted_edges(self, include_self_loops: bool = False) -> list[tuple[int, int]]:
        return sorted(e for e in self.edges if include_self_loops or e[0] != e[1])


def _check_node(G: Digraph, i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= G.n:
        raise ValueError(f"node {i!r} not in 1..{G.n}")


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return frozenset(out)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    return Digraph(n, frozenset(tuple(e) for e in edges))


def adjacency(G: Digraph) -> TropicalAdjMatrix:
    """Entry ``(i, j)`` is 0 iff ``i == j`` or ``(j, i)`` is an edge."""
    return TropicalAdjMatrix(G.n, G._in_masks)


def dependency_graph(A: TropicalAdjMatrix) -> Digraph:
    """Edge ``(j, i)`` whenever ``A[i, j] == 0``."""
    edges = []
    for i, r in enumerate(A.rows, 1):
        for j in _mask_to_set(r):
            edges.append((j, i))
    return Digraph(A.n, frozenset(edges))


def neighbors(G: Digraph, i: int) -> frozenset[int]:
    """In-neighbours of ``i``, including ``i`` itself."""
    _check_node(G, i)
    return _mask_to_set(G._in_masks[i - 1])


def p_neighbors(G: Digraph, i: int, p: int) -> frozenset[int]:
    """Nodes whose shortest path to ``i`` has length at most ``p``."""
    _check_node(G, i)
    if p < 1:
        raise ValueError("p must be >= 1")
    masks = G._in_masks
    current = masks[i - 1]
    for _ in range(p - 1):
        grown = current
        r = current
        while r:
            low = r & -r
            grown |= masks[low.bit_length() - 1]
            r ^= low
        if grown == current:
            break
        current = grown
    return _mask_to_set(current)


def distances_from(G: Digraph, sources: Iterable[int]) -> dict[int, int]:
    """BFS hop counts along edge direction from a set of sources.

    Unreachable nodes are absent from the result.
    """
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        _check_node(G, s)
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    out = G._out_lists
    while queue:
        u = queue.popleft()
        for v in out[u - 1]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def strongly_connected_components(G: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the
    condensation: a component is emitted only after every component it
    has edges into.
    """
    out = G._out_lists
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in G.nodes:
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, pos = work[-1]
            succ = out[v - 1]
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def is_strongly_connected(G: Digraph) -> bool:
    return len(strongly_connected_components(G)) == 1


def diameter(G: Digraph) -> int | float:
    """Longest shortest directed path; :data:`INFINITE` if not strongly connected."""
    d = 0
    for s in G.nodes:
        dist = distances_from(G, [s])
        if len(dist) < G.n:
            return INFINITE
        d = max(d, max(dist.values()))
    return d


def _check_family(graphs: Sequence[Digraph]) -> int:
    if not graphs:
        raise ValueError("need at least one graph")
    n = graphs[0].n
    for H in graphs[1:]:
        if H.n != n:
            raise DimensionError(f"graphs on {n} and {H.n} nodes")
    return n


def union_graph(graphs: Sequence[Digraph]) -> Digraph:
    n = _check_family(graphs)
    edges: set = set()
    for H in graphs:
        edges |= H.edges
    return Digraph(n, frozenset(edges))


def is_jointly_strongly_connected(graphs: Sequence[Digraph]) -> bool:
    return is_strongly_connected(union_graph(graphs))


def union_of_matrices(matrices: Sequence[TropicalAdjMatrix]) -> Digraph:
    """``G(A_1 (+) ... (+) A_m)``, the matrix route to the union graph."""
    if not matrices:
        raise ValueError("need at least one matrix")
    acc = matrices[0]
    for M in matrices[1:]:
        acc = mat_add(acc, M)
    return dependency_graph(acc)


class BlockForm(NamedTuple):
    """Relabelling exhibiting reducibility.

    After ``A.permuted(order)``, rows ``0..split-1`` have -inf in every
    column ``split..n-1``: the leading nodes hear nobody from the tail.
    """

    order: tuple[int, ...]
    split: int


def reducible_block_form(A: TropicalAdjMatrix) -> BlockForm | None:
    G = dependency_graph(A)
    comps = strongly_connected_components(G)
    if len(comps) == 1:
        return None
    # sources of the condensation first; the first component then has no
    # in-edges from anything after it
    comps.reverse()
    order = tuple(v for comp in comps for v in comp)
    return BlockForm(order, len(comps[0]))


def has_spanning_tree_rooted_at(G: Digraph, i: int) -> bool:
    return len(distances_from(G, [i])) == G.n


def strong_bridges(G: Digraph) -> list[tuple[int, int]]:
    """Non-loop edges whose removal destroys strong connectivity.

    Empty when ``G`` is not strongly connected to begin with.
    """
    if not is_strongly_connected(G):
        return []
    bridges = []
    for e in G.sorted_edges():
        if not is_strongly_connected(Digraph(G.n, G.edges - {e})):
            bridges.append(e)
    return bridges


def parse_edge_list(text: str) -> Digraph:
    """Parse ``n`` followed by ``j i`` lines (edge ``j -> i``, 1-based)."""
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, toks) for no, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise ParseError("empty graph file", line=1)
    no, toks = lines[0]
    if len(toks) != 1 or not toks[0].isdigit() or int(toks[0]) < 1:
        raise ParseError(f"expected a positive node count, got {' '.join(toks)!r}", line=no)
    n = int(toks[0])
    edges = []
    for no, toks in lines[1:]:
        if len(toks) != 2 or not all(t.isdigit() for t in toks):
            raise ParseError(f"expected 'j i', got {' '.join(toks)!r}", line=no)
        j, i = int(toks[0]), int(toks[1])
        if not (1 <= j <= n and 1 <= i <= n):
            raise ParseError(f"edge {j} -> {i} outside 1..{n}", line=no)
        edges.append((j, i))
    return from_edges(n, edges)


def format_edge_list(G: Digraph) -> str:
    lines = [str(G.n)] + [f"{j} {i}" for j, i in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def to_dot(G: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in G.nodes]
    lines += [f"  {j} -> {i};" for j, i in G.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
