"""Vertex-weighted graph representation and connectivity primitives.

Vertices are dense integers 0..n-1.  Graphs are simple, undirected and
connected, with positive integer vertex weights.  All operations are pure:
they never mutate their inputs, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ContractViolation, InputError

VertexSet = frozenset[int]


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    total_weight: int = field(default=0)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Sequence[int] | None = None,
    ) -> "WeightedGraph":
        """Build and validate a graph; rejects loops, duplicates, bad weights
        and disconnected inputs."""
        if n < 1:
            raise InputError(f"vertex count must be >= 1, got {n}")
        if weights is None:
            weights = [1] * n
        if len(weights) != n:
            raise InputError(f"expected {n} weights, got {len(weights)}")
        for v, w in enumerate(weights):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise InputError(f"vertex {v} has nonpositive weight {w}")
        seen: set[tuple[int, int]] = set()
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range 0..{n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            neighbors[u].append(v)
            neighbors[v].append(u)
        adjacency = tuple(tuple(sorted(ns)) for ns in neighbors)
        g = cls(n, adjacency, tuple(weights), sum(weights))
        if not is_connected(g, frozenset(range(n))):
            raise InputError("graph is not connected")
        return g

    @property
    def m(self) -> int:
        return sum(len(ns) for ns in self.adjacency) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def weight(self, s: Iterable[int]) -> int:
        return sum(self.weights[v] for v in s)

    def with_weights(self, weights: Sequence[int]) -> "WeightedGraph":
        """Same topology, new weights (validated)."""
        return WeightedGraph.from_edges(self.n, self.edges(), list(weights))


def _dfs_order(g: WeightedGraph, s: VertexSet, root: int) -> list[int]:
    """Iterative DFS preorder inside the induced subgraph G[s], ascending
    neighbor ids explored first."""
    return _dfs_tree(g, s, root)[0]


def components(g: WeightedGraph, s: VertexSet) -> list[VertexSet]:
    """Connected components of G[s], ordered by smallest member id.

    The returned sets partition s; each induces a connected subgraph.
    """
    if not s:
        raise ContractViolation("components() requires a nonempty vertex set")
    remaining = set(s)
    out: list[VertexSet] = []
    for v in sorted(s):
        if v in remaining:
            comp = frozenset(_dfs_order(g, frozenset(remaining), v))
            out.append(comp)
            remaining -= comp
    return out


def is_connected(g: WeightedGraph, s: VertexSet) -> bool:
    """True iff s is nonempty and G[s] has exactly one component."""
    if not s:
        return False
    root = min(s)
    return len(_dfs_order(g, s, root)) == len(s)


def _dfs_tree(g: WeightedGraph, s: VertexSet, root: int) -> tuple[list[int], dict[int, int]]:
    """DFS preorder plus parent map of a spanning tree of G[s] rooted at root."""
    parent: dict[int, int] = {root: root}
    order = [root]
    stack: list[Iterator[int]] = [iter(g.adjacency[root])]
    path = [root]
    while stack:
        it = stack[-1]
        advanced = False
        for w in it:
            if w in s and w not in parent:
                parent[w] = path[-1]
                order.append(w)
                path.append(w)
                stack.append(iter(g.adjacency[w]))
                advanced = True
                break
        if not advanced:
            stack.pop()
            path.pop()
    return order, parent


def non_cut_vertex(g: WeightedGraph, s: VertexSet) -> int:
    """A vertex of s whose removal keeps G[s] connected.

    Deterministic rule: lowest-id non-root leaf of the DFS spanning tree of
    G[s] rooted at min(s).
    """
    if len(s) < 2:
        raise ContractViolation("non_cut_vertex() requires at least two vertices")
    root = min(s)
    order, parent = _dfs_tree(g, s, root)
    if len(order) != len(s):
        raise ContractViolation("non_cut_vertex() requires a connected vertex set")
    children = {v: 0 for v in s}
    for v in order:
        if v != root:
            children[parent[v]] += 1
    return min(v for v in s if v != root and children[v] == 0)


def split_two(g: WeightedGraph, s: VertexSet) -> tuple[VertexSet, VertexSet]:
    """Split a connected set into two connected halves.

    Deletes one spanning-tree edge of G[s], chosen to minimize the weight
    imbalance of the two sides (ties: lowest edge).  The half containing
    min(s) comes first.  Any tree edge yields a correct split; the balanced
    choice is a quality heuristic only.
    """
    if len(s) < 2:
        raise ContractViolation("split_two() requires at least two vertices")
    root = min(s)
    order, parent = _dfs_tree(g, s, root)
    if len(order) != len(s):
        raise ContractViolation("split_two() requires a connected vertex set")

    subtree = {v: g.weights[v] for v in s}
    for v in reversed(order):
        if v != root:
            subtree[parent[v]] += subtree[v]
    total = subtree[root]

    best: tuple[int, tuple[int, int], int] | None = None
    for v in order:
        if v == root:
            continue
        edge = (min(v, parent[v]), max(v, parent[v]))
        imbalance = abs(total - 2 * subtree[v])
        cand = (imbalance, edge, v)
        if best is None or cand[:2] < best[:2]:
            best = cand
    assert best is not None
    _, _, child = best

    below = set()
    stack = [child]
    kids: dict[int, list[int]] = {v: [] for v in s}
    for v in order:
        if v != root:
            kids[parent[v]].append(v)
    while stack:
        v = stack.pop()
        below.add(v)
        stack.extend(kids[v])
    side_a = frozenset(s - below)
    side_b = frozenset(below)
    if root in side_b:
        side_a, side_b = side_b, side_a
    return side_a, side_b


def boundary_neighbors(g: WeightedGraph, frm: VertexSet, inside: VertexSet) -> list[int]:
    """Vertices of `inside` adjacent to at least one vertex of `frm`,
    ascending ids.  The two sets must be disjoint."""
    if frm & inside:
        raise ContractViolation("boundary_neighbors() requires disjoint sets")
    return [v for v in sorted(inside) if any(u in frm for u in g.adjacency[v])]
