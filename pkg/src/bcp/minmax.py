"""Min-max balanced connected k-partition via local improvement.

The k=3 solver repeatedly shrinks the heaviest class of an ordered
3-partition with two moves: `merge` fuses the two light classes and splits
the heavy one, `pull` drags a boundary piece of the heavy class into a light
one.  When neither applies the instance has a star-like cut-vertex structure
that certifies optimality.  Partitions for k > 3 are derived from the
3-partition by splitting off singleton classes or by regrouping the
components around the star center.

Each move strictly decreases the heaviest class weight, so with integer
weights the loop runs at most w(G) iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ContractViolation, InternalError
from .graph import (
    VertexSet,
    WeightedGraph,
    _dfs_tree,
    boundary_neighbors,
    components,
    is_connected,
    non_cut_vertex,
    split_two,
)
from .partition import (
    Partition,
    StarCenterCertificate,
    is_ordered3,
    order3,
    sort_classes,
    w_plus,
)


class Certificate(Enum):
    """How a k-partition's quality is certified."""

    RATIO_HALF_W = "RatioHalfW"      # heaviest class weighs at most w(G)/2
    SINGLETON_TOP = "SingletonTop"   # heaviest class is a single vertex
    STAR_OPTIMAL = "StarOptimal"     # built around a star-center cut vertex


@dataclass(frozen=True)
class PullMove:
    """A pull-admissible set together with its target light class (1 or 2)."""

    u_set: VertexSet
    target: int


@dataclass(frozen=True)
class BcpkResult:
    classes: Partition
    certificate: Certificate
    star: StarCenterCertificate | None
    iterations: int


def _require_ordered3(g: WeightedGraph, p: Partition) -> None:
    if not is_ordered3(g, p):
        raise ContractViolation("expected a weight-ordered connected 3-partition")


def _adjacent(g: WeightedGraph, a: VertexSet, b: VertexSet) -> bool:
    return bool(boundary_neighbors(g, a, b))


def merge(g: WeightedGraph, p: Partition) -> Partition:
    """Fuse V1 with V2 and split V3 into two connected halves.

    Requires w(V3) > w(G)/2, |V3| >= 2 and V1 adjacent to V2; the result is
    ordered and its heaviest class is strictly lighter than the old V3.
    """
    _require_ordered3(g, p)
    v1, v2, v3 = p
    if 2 * g.weight(v3) <= g.total_weight:
        raise ContractViolation("merge() requires w(V3) > w(G)/2")
    if len(v3) < 2:
        raise ContractViolation("merge() requires |V3| >= 2")
    if not _adjacent(g, v1, v2):
        raise ContractViolation("merge() requires V1 and V2 adjacent")
    a, b = split_two(g, v3)
    return order3(g, (v1 | v2, a, b))


def pull_check(g: WeightedGraph, p: Partition, i: int) -> VertexSet | None:
    """Find a pull-admissible subset of V3 for light class i in {1, 2}.

    Scans boundary vertices v of V3 ascending; around each, keeping only the
    heaviest component of V3 - v outside gives the lightest candidate set.
    Returns None only if no pull-admissible set exists at all.
    """
    if i not in (1, 2):
        raise ContractViolation("class index must be 1 or 2")
    _require_ordered3(g, p)
    v3 = p[2]
    vi = p[i - 1]
    w3 = g.weight(v3)
    if 2 * w3 <= g.total_weight:
        raise ContractViolation("pull_check() requires w(V3) > w(G)/2")
    wi = g.weight(vi)
    for v in boundary_neighbors(g, vi, v3):
        rest = v3 - {v}
        if not rest:
            continue
        comps = sorted(components(g, rest), key=lambda c: (g.weight(c), min(c)))
        light = comps[:-1]
        if wi + g.weights[v] + sum(g.weight(c) for c in light) < w3:
            u: set[int] = {v}
            for c in light:
                u |= c
            return frozenset(u)
    return None


def pull(g: WeightedGraph, p: Partition, move: PullMove) -> Partition:
    """Move U from V3 into light class i, then reorder.

    The move must keep both affected classes connected and make the grown
    class lighter than the old V3.
    """
    _require_ordered3(g, p)
    if move.target not in (1, 2):
        raise ContractViolation("pull target must be 1 or 2")
    v3 = p[2]
    vi = p[move.target - 1]
    vj = p[2 - move.target]
    u = move.u_set
    if 2 * g.weight(v3) <= g.total_weight:
        raise ContractViolation("pull() requires w(V3) > w(G)/2")
    if not u or not u < v3:
        raise ContractViolation("pull set must be a nonempty proper subset of V3")
    if g.weight(vi | u) >= g.weight(v3):
        raise ContractViolation("pull set would not shrink the heaviest class")
    if not is_connected(g, vi | u) or not is_connected(g, v3 - u):
        raise ContractViolation("pull set breaks connectivity")
    return order3(g, (vj, vi | u, v3 - u))


def initial_3partition(g: WeightedGraph) -> Partition:
    """Deterministic starting point: peel the last-discovered leaf off a DFS
    spanning tree twice; the two peeled vertices become singleton classes."""
    if g.n < 3:
        raise ContractViolation("need at least 3 vertices for a 3-partition")
    everything = frozenset(range(g.n))
    order, parent = _dfs_tree(g, everything, 0)
    position = {v: idx for idx, v in enumerate(order)}
    degree = {v: 0 for v in order}
    for v in order:
        if v != parent[v]:
            degree[v] += 1
            degree[parent[v]] += 1
    removed: list[int] = []
    alive = set(order)
    for _ in range(2):
        leaf = max((v for v in alive if degree[v] <= 1), key=position.__getitem__)
        alive.remove(leaf)
        removed.append(leaf)
        if leaf != parent[leaf] and parent[leaf] in alive:
            degree[parent[leaf]] -= 1
        for w in alive:
            if parent[w] == leaf:
                degree[w] -= 1
    rest = everything - set(removed)
    return order3(g, (frozenset({removed[0]}), frozenset({removed[1]}), rest))


def _improvement_loop(g: WeightedGraph, p: Partition) -> tuple[Partition, int]:
    """Run merge/pull until w(V3) <= w(G)/2 or neither move applies.

    Returns the terminal ordered partition and the iteration count; aborts if
    the heaviest weight ever fails to strictly decrease.
    """
    total = g.total_weight
    iterations = 0
    while 2 * g.weight(p[2]) > total:
        before = g.weight(p[2])
        if _adjacent(g, p[0], p[1]) and len(p[2]) >= 2:
            p = merge(g, p)
        else:
            u = pull_check(g, p, 1)
            target = 1
            if u is None:
                u = pull_check(g, p, 2)
                target = 2
            if u is None:
                break
            p = pull(g, p, PullMove(u, target))
        iterations += 1
        if g.weight(p[2]) >= before:
            raise InternalError("heaviest class weight did not decrease")
        if iterations > total + 1:
            raise InternalError("improvement loop exceeded its w(G) bound")
    return p, iterations


def minmax_bcp3(g: WeightedGraph) -> Partition:
    """Ordered connected 3-partition with w+ <= (3/2) * optimum, and exactly
    optimal whenever the returned heaviest class weighs more than w(G)/2."""
    p, _ = _improvement_loop(g, initial_3partition(g))
    return p


def star_center_certificate(g: WeightedGraph, p: Partition) -> StarCenterCertificate:
    """Extract and verify the cut-vertex structure of a terminal 3-partition
    with w(V3) > w(G)/2 and |V3| >= 2.

    The unique V3-vertex adjacent to V1 is the star center u; removing it
    must leave V1 and V2 as components with everything else no heavier than
    V1.  A structure mismatch means the partition was not terminal (or the
    solver is buggy) and raises ContractViolation.
    """
    _require_ordered3(g, p)
    v1, v2, v3 = p
    total = g.total_weight
    if 2 * g.weight(v3) <= total:
        raise ContractViolation("star certificate needs w(V3) > w(G)/2")
    if len(v3) < 2:
        raise ContractViolation("star certificate needs |V3| >= 2")
    if _adjacent(g, v1, v2):
        raise ContractViolation("V1 and V2 must not be adjacent")
    if 4 * g.weight(v1) >= total:
        raise ContractViolation("expected w(V1) < w(G)/4 at a terminal partition")
    hits1 = boundary_neighbors(g, v1, v3)
    hits2 = boundary_neighbors(g, v2, v3)
    if len(hits1) != 1 or hits1 != hits2:
        raise ContractViolation(
            f"expected a single shared contact vertex, got {hits1} and {hits2}"
        )
    u = hits1[0]
    comps = sorted(
        components(g, frozenset(range(g.n)) - {u}),
        key=lambda c: (g.weight(c), min(c)),
    )
    if v1 not in comps or v2 not in comps:
        raise ContractViolation("V1 and V2 must be components of G-u")
    for c in comps:
        if c not in (v1, v2) and g.weight(c) > g.weight(v1):
            raise ContractViolation("a stray component outweighs V1")
    if len(comps) == 3 and 4 * g.weights[u] <= total:
        raise ContractViolation("with 3 components the center must weigh > w(G)/4")
    return StarCenterCertificate(u=u, comps=tuple(comps))


def split_off_singletons(g: WeightedGraph, p: Partition, q: int) -> Partition:
    """Grow a partition by q classes, each time cutting a removable vertex
    out of the heaviest class with at least two members (ties: smallest id).
    The heaviest class weight never increases."""
    if q < 0 or len(p) + q > g.n:
        raise ContractViolation(f"cannot add {q} singleton classes")
    classes = list(p)
    for _ in range(q):
        candidates = [c for c in classes if len(c) >= 2]
        pick = max(candidates, key=lambda c: (g.weight(c), -min(c)))
        u = non_cut_vertex(g, pick)
        classes[classes.index(pick)] = pick - {u}
        classes.append(frozenset({u}))
    return tuple(classes)


def minmax_bcpk(g: WeightedGraph, k: int) -> BcpkResult:
    """Connected k-partition with heaviest class at most (k/2) times the
    optimum; optimal outright in the certified star-center case."""
    if not 3 <= k <= g.n:
        raise ContractViolation(f"k must be in [3, {g.n}], got {k}")
    p3, iterations = _improvement_loop(g, initial_3partition(g))
    total = g.total_weight

    if 2 * w_plus(g, p3) <= total or len(p3[2]) == 1:
        classes = split_off_singletons(g, p3, k - 3)
        cert = (
            Certificate.RATIO_HALF_W
            if 2 * w_plus(g, p3) <= total
            else Certificate.SINGLETON_TOP
        )
        return BcpkResult(sort_classes(g, classes), cert, None, iterations)

    star = star_center_certificate(g, p3)
    ell = star.ell
    if ell >= k - 1:
        t = ell - k + 1
        core: set[int] = {star.u}
        for c in star.comps[:t]:
            core |= c
        classes = (frozenset(core),) + star.comps[t:]
        return BcpkResult(
            sort_classes(g, classes), Certificate.STAR_OPTIMAL, star, iterations
        )
    fan = (frozenset({star.u}),) + star.comps
    classes = split_off_singletons(g, fan, k - 1 - ell)
    # Every piece except {u} weighs at most w(V2) <= w(G)/2.  A heavier
    # result therefore tops out at the singleton {u}, whose weight no
    # partition can avoid paying.
    cert = (
        Certificate.RATIO_HALF_W
        if 2 * w_plus(g, classes) <= total
        else Certificate.SINGLETON_TOP
    )
    return BcpkResult(sort_classes(g, classes), cert, None, iterations)
