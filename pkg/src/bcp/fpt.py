"""Exact unweighted max-min BCP, parameterized by a vertex cover.

Vertices outside the cover form a stable set I and are interchangeable
within each neighborhood class I(S) = {v in I : N(v) = S}, so the model
only decides how many of them each partition class receives (integer
variables y[S,i]) next to binary membership x[v,i] for cover vertices.
Connectivity is enforced lazily: whenever an integral candidate decodes to a
disconnected class, a violated cut over a separator Z and a hyperedge cut F
of the component hypergraph H_Z is added to a growing pool, and the search
continues.  The pool never excludes the encoding of a real connected
partition, so depth-first branch-and-bound over the x assignment plus an
exact distribution of the y counts solves the problem to optimality.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ContractViolation, InputError, InternalError
from .graph import VertexSet, WeightedGraph, components, is_connected
from .minmax import split_off_singletons
from .partition import Partition


def greedy_vertex_cover(g: WeightedGraph) -> VertexSet:
    """Both endpoints of a greedily built maximal matching (a 2-approximate
    cover), scanning edges in ascending order."""
    cover: set[int] = set()
    for u, v in g.edges():
        if u not in cover and v not in cover:
            cover.add(u)
            cover.add(v)
    return frozenset(cover)


@dataclass(frozen=True)
class VertexCoverDecomposition:
    graph: WeightedGraph
    cover: tuple[int, ...]
    stable: tuple[int, ...]
    classes_by_neighborhood: dict[VertexSet, tuple[int, ...]]

    def neighborhood_sets(self) -> list[VertexSet]:
        """Nonempty neighborhood classes in a fixed deterministic order."""
        return sorted(self.classes_by_neighborhood, key=lambda s: tuple(sorted(s)))

    @property
    def eta(self) -> int:
        return 1 << len(self.cover)


def decompose(g: WeightedGraph, cover: Iterable[int] | None = None) -> VertexCoverDecomposition:
    """Split V into a vertex cover X and stable set I, grouping I by exact
    neighborhood.  A supplied cover is validated; otherwise a greedy one is
    computed."""
    if cover is None:
        x = greedy_vertex_cover(g)
    else:
        x = frozenset(cover)
        for v in x:
            if not 0 <= v < g.n:
                raise InputError(f"cover vertex {v} out of range")
        for u, v in g.edges():
            if u not in x and v not in x:
                raise InputError(f"supplied set misses edge ({u},{v}); not a vertex cover")
    stable = tuple(v for v in range(g.n) if v not in x)
    groups: dict[VertexSet, list[int]] = {}
    for v in stable:
        s = frozenset(g.adjacency[v])
        groups.setdefault(s, []).append(v)
    return VertexCoverDecomposition(
        graph=g,
        cover=tuple(sorted(x)),
        stable=stable,
        classes_by_neighborhood={s: tuple(sorted(vs)) for s, vs in groups.items()},
    )


@dataclass(frozen=True)
class CutHypergraph:
    """Components of G[X-Z] as nodes; one hyperedge per nonempty I(S)
    recording which of those components S touches."""

    z: VertexSet
    nodes: tuple[VertexSet, ...]
    edges: tuple[tuple[VertexSet, frozenset[int]], ...]

    def node_index(self, v: int) -> int:
        for idx, comp in enumerate(self.nodes):
            if v in comp:
                return idx
        raise ContractViolation(f"vertex {v} is not in any hypergraph node")


def build_hypergraph(dec: VertexCoverDecomposition, z: Iterable[int]) -> CutHypergraph:
    zset = frozenset(z)
    xset = frozenset(dec.cover)
    if not zset <= xset:
        raise ContractViolation("Z must be a subset of the cover")
    rest = xset - zset
    if not rest:
        raise ContractViolation("Z must not be the whole cover")
    nodes = tuple(components(dec.graph, rest))
    edges = []
    for s in dec.neighborhood_sets():
        touched = frozenset(i for i, comp in enumerate(nodes) if s & comp)
        edges.append((s, touched))
    return CutHypergraph(z=zset, nodes=nodes, edges=tuple(edges))


@dataclass
class ModelCandidate:
    """An integral assignment of the model variables."""

    k: int
    x_class: dict[int, int]
    y: dict[VertexSet, tuple[int, ...]]

    def x(self, v: int, i: int) -> int:
        return 1 if self.x_class.get(v) == i else 0

    def y_val(self, s: VertexSet, i: int) -> int:
        counts = self.y.get(s)
        return counts[i] if counts is not None else 0

    def class_size(self, i: int) -> int:
        return sum(1 for c in self.x_class.values() if c == i) + sum(
            counts[i] for counts in self.y.values()
        )


@dataclass(frozen=True)
class CutConstraint:
    """One member of the lazy connectivity family:
    x[u,i] + x[v,i] - sum(x[z,i] for z in Z) - sum(y[S,i] for S in F) <= 1."""

    u: int
    v: int
    class_index: int
    z: VertexSet
    hyperedges: frozenset[VertexSet]

    def lhs(self, candidate: ModelCandidate) -> int:
        i = self.class_index
        return (
            candidate.x(self.u, i)
            + candidate.x(self.v, i)
            - sum(candidate.x(z, i) for z in self.z)
            - sum(candidate.y_val(s, i) for s in self.hyperedges)
        )

    def satisfied_by(self, candidate: ModelCandidate) -> bool:
        return self.lhs(candidate) <= 1

    def render(self) -> str:
        zs = " - " + " - ".join(f"x[{z},{self.class_index}]" for z in sorted(self.z)) if self.z else ""
        ys = (
            " - " + " - ".join(f"y[{set(sorted(s))},{self.class_index}]" for s in sorted(self.hyperedges, key=lambda t: tuple(sorted(t))))
            if self.hyperedges
            else ""
        )
        return f"x[{self.u},{self.class_index}] + x[{self.v},{self.class_index}]{zs}{ys} <= 1"


@dataclass
class FptModel:
    """Dimensions, base constraints and the growing cut pool of one solve."""

    dec: VertexCoverDecomposition
    k: int
    cuts: list[CutConstraint] = field(default_factory=list)

    def encode(self, partition: Sequence[Iterable[int]]) -> ModelCandidate:
        """Model vector of a partition, classes ordered by (size, min id)."""
        classes = sorted((frozenset(c) for c in partition), key=lambda c: (len(c), min(c)))
        if len(classes) != self.k:
            raise ContractViolation(f"expected {self.k} classes, got {len(classes)}")
        xset = frozenset(self.dec.cover)
        x_class = {}
        for i, c in enumerate(classes):
            for v in c & xset:
                x_class[v] = i
        y = {}
        for s, members in self.dec.classes_by_neighborhood.items():
            mset = set(members)
            y[s] = tuple(len(mset & c) for c in classes)
        return ModelCandidate(k=self.k, x_class=x_class, y=y)

    def check_base(self, candidate: ModelCandidate) -> list[str]:
        """Report violations of the non-cut base constraints."""
        report = []
        k = self.k
        sizes = [candidate.class_size(i) for i in range(k)]
        for i in range(k - 1):
            if sizes[i] > sizes[i + 1]:
                report.append(f"class sizes not non-decreasing at {i}: {sizes}")
        for v in self.dec.cover:
            c = candidate.x_class.get(v)
            if c is None or not 0 <= c < k:
                report.append(f"cover vertex {v} not assigned to a class")
        for s, members in self.dec.classes_by_neighborhood.items():
            counts = candidate.y.get(s)
            if counts is None or len(counts) != k:
                report.append(f"missing counts for neighborhood {sorted(s)}")
                continue
            if any(c < 0 for c in counts):
                report.append(f"negative count for neighborhood {sorted(s)}")
            if sum(counts) != len(members):
                report.append(
                    f"neighborhood {sorted(s)} distributes {sum(counts)} of {len(members)}"
                )
            for i in range(k):
                if counts[i] > 0 and not any(candidate.x_class.get(v) == i for v in s):
                    report.append(
                        f"class {i} takes from neighborhood {sorted(s)} without a neighbor"
                    )
        return report

    def violated_cuts(self, candidate: ModelCandidate) -> list[CutConstraint]:
        return [c for c in self.cuts if not c.satisfied_by(candidate)]

    def objective(self, candidate: ModelCandidate) -> int:
        return candidate.class_size(0)

    def dump(self) -> str:
        dec = self.dec
        lines = [
            f"max-min connected partition model, k={self.k}",
            f"cover X = {list(dec.cover)}",
            f"stable I = {list(dec.stable)}",
            "neighborhood classes:",
        ]
        for s in dec.neighborhood_sets():
            lines.append(f"  I({sorted(s)}) = {list(dec.classes_by_neighborhood[s])}")
        nx = len(dec.cover) * self.k
        ny = len(dec.classes_by_neighborhood) * self.k
        lines.append(f"variables: {nx} binary x[v,i], {ny} integer y[S,i]")
        lines.append("base constraints:")
        lines.append("  class sizes non-decreasing in i")
        lines.append("  each cover vertex in exactly one class")
        lines.append("  y[S,i] <= |I(S)| * sum(x[v,i] for v in S)")
        lines.append("  sum_i y[S,i] = |I(S)|")
        lines.append(f"cut pool ({len(self.cuts)} cuts):")
        for cut in self.cuts:
            lines.append("  " + cut.render())
        return "\n".join(lines) + "\n"


def _decode_classes(
    dec: VertexCoverDecomposition, k: int, candidate: ModelCandidate
) -> list[set[int]]:
    """Concrete classes: cover vertices by x, then the y[S,i] lowest-id
    unused members of each I(S) in class order."""
    classes: list[set[int]] = [set() for _ in range(k)]
    for v, c in candidate.x_class.items():
        classes[c].add(v)
    for s in sorted(candidate.y, key=lambda t: tuple(sorted(t))):
        members = list(dec.classes_by_neighborhood.get(s, ()))
        counts = candidate.y[s]
        if sum(counts) != len(members):
            raise ContractViolation(
                f"neighborhood {sorted(s)} distributes {sum(counts)} of {len(members)}"
            )
        at = 0
        for i, cnt in enumerate(counts):
            for _ in range(cnt):
                classes[i].add(members[at])
                at += 1
    return classes


def separate(
    g: WeightedGraph,
    dec: VertexCoverDecomposition,
    k: int,
    candidate: ModelCandidate,
) -> list[CutConstraint]:
    """Violated connectivity cuts of the candidate, one per disconnected
    class; empty iff every class decodes to a connected subgraph.

    For a disconnected class i the separator is Z = X minus the class's
    cover part, and F collects the hyperedges without class-i stable
    vertices that touch the region reachable from u through used ones; any
    path reconnecting u to v must cross F, so the cut is valid for every
    feasible solution yet violated here.
    """
    xset = frozenset(dec.cover)
    cuts: list[CutConstraint] = []
    for i, members in enumerate(_decode_classes(dec, k, candidate)):
        if not members or is_connected(g, frozenset(members)):
            continue
        comps = components(g, frozenset(members))
        x_in_class = members & xset
        if not x_in_class:
            raise ContractViolation(f"disconnected class {i} has no cover vertex")
        u = min(x_in_class)
        comp_u = next(c for c in comps if u in c)
        other_x = sorted(x_in_class - comp_u)
        if not other_x:
            raise ContractViolation(
                f"class {i} has a component without cover vertices"
            )
        v = other_x[0]
        z = xset - x_in_class
        hyper = build_hypergraph(dec, z)
        node_of_u = hyper.node_index(u)
        active = [
            (s, touched)
            for s, touched in hyper.edges
            if candidate.y_val(s, i) >= 1
        ]
        reach = {node_of_u}
        grown = True
        while grown:
            grown = False
            for _, touched in active:
                if touched & reach and not touched <= reach:
                    reach |= touched
                    grown = True
        f_edges = frozenset(
            s
            for s, touched in hyper.edges
            if candidate.y_val(s, i) == 0 and touched & reach
        )
        cut = CutConstraint(u=u, v=v, class_index=i, z=z, hyperedges=f_edges)
        if cut.satisfied_by(candidate):
            raise InternalError("separation produced a non-violated cut")
        cuts.append(cut)
    return cuts


def reconstruct(
    g: WeightedGraph, dec: VertexCoverDecomposition, k: int, candidate: ModelCandidate
) -> Partition:
    """Concrete connected k-partition from a model solution, classes ordered
    by (size, min id); a disconnected class means separation was incomplete
    and raises."""
    classes = _decode_classes(dec, k, candidate)
    out = sorted((frozenset(c) for c in classes), key=lambda c: (len(c), min(c) if c else -1))
    for c in out:
        if not c or not is_connected(g, c):
            raise ContractViolation(f"decoded class {sorted(c)} is not connected")
    return tuple(out)


def _max_flow(
    supplies: list[int], demands: list[int], elig: list[list[int]]
) -> list[list[int]] | None:
    """Integral transport meeting every demand, or None.

    Tiny Edmonds-Karp specialization: source -> group j (cap supply), group
    -> class i for eligible i (unbounded), class -> sink (cap demand).
    """
    m, k = len(supplies), len(demands)
    need = sum(demands)
    if need == 0:
        return [[0] * k for _ in range(m)]
    src, snk = m + k, m + k + 1
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {n: [] for n in range(m + k + 2)}

    def arc(a: int, b: int, c: int) -> None:
        cap[(a, b)] = c
        cap[(b, a)] = cap.get((b, a), 0)
        if b not in adj[a]:
            adj[a].append(b)
        if a not in adj[b]:
            adj[b].append(a)

    for j, s in enumerate(supplies):
        arc(src, j, s)
    for j in range(m):
        for i in elig[j]:
            arc(j, m + i, need)
    for i, d in enumerate(demands):
        arc(m + i, snk, d)

    sent = 0
    while sent < need:
        parent = {src: src}
        queue = [src]
        while queue and snk not in parent:
            a = queue.pop(0)
            for b in adj[a]:
                if b not in parent and cap.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if snk not in parent:
            return None
        path = [snk]
        while path[-1] != src:
            path.append(parent[path[-1]])
        path.reverse()
        push = min(cap[(path[t], path[t + 1])] for t in range(len(path) - 1))
        for t in range(len(path) - 1):
            cap[(path[t], path[t + 1])] -= push
            cap[(path[t + 1], path[t])] = cap.get((path[t + 1], path[t]), 0) + push
        sent += push
    return [[cap.get((m + i, j), 0) for i in range(k)] for j in range(m)]


def _distribute(
    counts: list[int],
    elig: list[list[int]],
    bases: list[int],
    covers: list[tuple[int, list[int]]],
    cap_value: int,
) -> tuple[int, list[list[int]]] | None:
    """Exact max-min completion of the stable-set counts for a fixed cover
    assignment.

    covers lists (class, eligible group indices) pairs from the active pool
    cuts, each requiring at least one unit; every way of choosing a provider
    per cover is tried, and for each the best achievable minimum class size
    is found by binary search over a transport feasibility problem.  Returns
    the best (value, allocation) or None when the covers are unsatisfiable.
    """
    k = len(bases)
    m = len(counts)
    option_lists = []
    for class_index, groups in covers:
        opts = [(j, class_index) for j in groups]
        if not opts:
            return None
        option_lists.append(opts)

    seen: set[frozenset[tuple[int, int]]] = set()
    best: tuple[int, list[list[int]]] | None = None
    for combo in product(*option_lists) if option_lists else [()]:
        forced = frozenset(combo)
        if forced in seen:
            continue
        seen.add(forced)
        per_group = Counter(j for j, _ in forced)
        if any(per_group[j] > counts[j] for j in per_group):
            continue
        base_eff = list(bases)
        for _, i in forced:
            base_eff[i] += 1
        supplies = [counts[j] - per_group[j] for j in range(m)]

        lo, hi = 0, cap_value
        while lo < hi:
            mid = (lo + hi + 1) // 2
            demands = [max(0, mid - b) for b in base_eff]
            if _max_flow(supplies, demands, elig) is not None:
                lo = mid
            else:
                hi = mid - 1
        if best is not None and lo <= best[0]:
            continue
        demands = [max(0, lo - b) for b in base_eff]
        flow = _max_flow(supplies, demands, elig)
        assert flow is not None
        alloc = [row[:] for row in flow]
        for j, i in forced:
            alloc[j][i] += 1
        best = (lo, alloc)
    if best is None:
        return None

    value, alloc = best
    sizes = [bases[i] + sum(alloc[j][i] for j in range(m)) for i in range(k)]
    for j in range(m):
        left = counts[j] - sum(alloc[j])
        for _ in range(left):
            i = min(elig[j], key=lambda i: (sizes[i], i))
            alloc[j][i] += 1
            sizes[i] += 1
    return value, alloc


@dataclass
class FptResult:
    value: int
    classes: Partition
    model: FptModel
    nodes: int
    cuts_added: int


def solve_fpt_maxmin(
    g: WeightedGraph,
    k: int,
    cover: Iterable[int] | None = None,
    max_seconds: float | None = None,
) -> FptResult:
    """Exact unweighted max-min connected k-partition.

    Rejects non-uniform weights.  With k exceeding the cover size the
    optimum is 1 and a witness is built directly; otherwise cover vertices
    are assigned to classes depth-first (new classes opened in index order
    to break symmetry) and each complete assignment is finished by the exact
    count distribution, with lazy connectivity cuts repairing disconnected
    candidates.
    """
    if len(set(g.weights)) > 1:
        raise InputError("max-min solver handles uniform weights only")
    if not 2 <= k <= g.n:
        raise InputError(f"k must be in [2, {g.n}], got {k}")
    dec = decompose(g, cover)
    model = FptModel(dec=dec, k=k)
    xs = list(dec.cover)

    if k > len(xs):
        # Some class must sit inside the stable set, hence be a singleton:
        # the optimum is 1 and peeling singletons off the trivial partition
        # gives a witness.
        classes = split_off_singletons(g, (frozenset(range(g.n)),), k - 1)
        ordered = tuple(sorted(classes, key=lambda c: (len(c), min(c))))
        return FptResult(value=1, classes=ordered, model=model, nodes=0, cuts_added=0)

    sets = dec.neighborhood_sets()
    counts = [len(dec.classes_by_neighborhood[s]) for s in sets]
    pos_of = {v: p for p, v in enumerate(xs)}
    set_masks = [sum(1 << pos_of[v] for v in s) for s in sets]
    rem_masks = [0] * (len(xs) + 1)
    for p in range(len(xs) - 1, -1, -1):
        rem_masks[p] = rem_masks[p + 1] | (1 << p)

    cap_value = g.n // k
    deadline = time.monotonic() + max_seconds if max_seconds is not None else None

    best_value = 0
    best_classes: Partition | None = None
    pool_seen: set[CutConstraint] = set()
    nodes = 0
    class_masks: list[int] = []
    assign: list[int] = []

    def upper_bound(pos: int) -> int:
        rem = rem_masks[pos]
        remaining = len(xs) - pos
        ub = cap_value
        for cm in class_masks:
            reach = cm | rem
            attach = sum(c for c, sm in zip(counts, set_masks) if sm & reach)
            ub = min(ub, bin(cm).count("1") + remaining + attach)
        return ub

    def candidate_from_alloc(alloc: list[list[int]]) -> ModelCandidate:
        x_class = {xs[p]: assign[p] for p in range(len(xs))}
        y = {s: tuple(alloc[j]) for j, s in enumerate(sets)}
        return ModelCandidate(k=k, x_class=x_class, y=y)

    def leaf() -> None:
        nonlocal best_value, best_classes
        bases = [bin(cm).count("1") for cm in class_masks]
        elig = [
            [i for i in range(k) if sm & class_masks[i]] for sm in set_masks
        ]
        x_of = {xs[p]: assign[p] for p in range(len(xs))}
        while True:
            covers = []
            feasible = True
            for cut in model.cuts:
                i = cut.class_index
                if x_of.get(cut.u) != i or x_of.get(cut.v) != i:
                    continue
                if any(x_of.get(z) == i for z in cut.z):
                    continue
                groups = [
                    j
                    for j, s in enumerate(sets)
                    if s in cut.hyperedges and i in elig[j]
                ]
                if not groups:
                    feasible = False
                    break
                covers.append((i, groups))
            if not feasible:
                return
            res = _distribute(counts, elig, bases, covers, cap_value)
            if res is None or res[0] <= best_value:
                return
            value, alloc = res
            candidate = candidate_from_alloc(alloc)
            cuts = separate(g, dec, k, candidate)
            if not cuts:
                best_value = value
                best_classes = reconstruct(g, dec, k, candidate)
                return
            fresh = [c for c in cuts if c not in pool_seen]
            if not fresh:
                raise InternalError("separation repeated a pooled cut")
            for c in fresh:
                pool_seen.add(c)
                model.cuts.append(c)

    def dfs(pos: int, used: int) -> None:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("max-min solve time budget exceeded")
        if best_value >= cap_value:
            return
        if pos == len(xs):
            if used == k:
                leaf()
            return
        if used + (len(xs) - pos) < k:
            return
        if used and upper_bound(pos) <= best_value:
            return
        bit = 1 << pos
        for c in range(min(used + 1, k)):
            if c == used:
                class_masks.append(bit)
            else:
                class_masks[c] |= bit
            assign.append(c)
            dfs(pos + 1, used + (1 if c == used else 0))
            assign.pop()
            if c == used:
                class_masks.pop()
            else:
                class_masks[c] &= ~bit

    dfs(0, 0)
    if best_classes is None:
        raise InternalError("search found no connected partition")
    return FptResult(
        value=best_value,
        classes=best_classes,
        model=model,
        nodes=nodes,
        cuts_added=len(model.cuts),
    )
