"""Exhaustive ground truth for small instances.

Enumerates every connected k-partition exactly once (classes unordered) via
restricted-growth assignment over vertices in id order, pruning branches as
soon as a class can no longer become connected.  On top of the stream sit the
exact min-max / max-min optima and a brute-force pull-admissibility check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import BudgetExceeded, ContractViolation
from .graph import VertexSet, WeightedGraph, is_connected
from .partition import Partition


@dataclass(frozen=True)
class EnumerationBudget:
    """Hard caps for exhaustive enumeration; exceeding one raises
    BudgetExceeded rather than truncating silently."""

    max_vertices: int = 14
    max_partitions: int = 2_000_000
    max_seconds: float | None = None


DEFAULT_BUDGET = EnumerationBudget()


def _mask_connected(nbr: tuple[int, ...], mask: int) -> bool:
    if mask == 0:
        return False
    seed = mask & -mask
    reach = seed
    frontier = seed
    while frontier:
        grown = 0
        f = frontier
        while f:
            b = f & -f
            grown |= nbr[b.bit_length() - 1]
            f ^= b
        frontier = grown & mask & ~reach
        reach |= frontier
    return reach == mask


def enumerate_connected_kpartitions(
    g: WeightedGraph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Iterator[Partition]:
    """Yield each connected k-partition of g exactly once.

    Classes are unordered; symmetry is killed by keeping vertex 0 in the
    first class and opening new classes only in index order.
    """
    n = g.n
    if not 1 <= k <= n:
        raise ContractViolation(f"k must be in [1, {n}], got {k}")
    if n > budget.max_vertices:
        raise BudgetExceeded(
            f"{n} vertices exceeds enumeration budget of {budget.max_vertices}"
        )
    nbr = tuple(
        sum(1 << w for w in g.adjacency[v]) for v in range(n)
    )
    full = (1 << n) - 1
    deadline = None
    if budget.max_seconds is not None:
        deadline = time.monotonic() + budget.max_seconds
    yielded = 0
    ticks = 0

    masks: list[int] = [1]  # vertex 0 opens class 0
    nbrs: list[int] = [nbr[0]]

    def decode() -> Partition:
        return tuple(
            frozenset(v for v in range(n) if m >> v & 1) for m in masks
        )

    def recurse(v: int) -> Iterator[Partition]:
        nonlocal yielded, ticks
        ticks += 1
        if deadline is not None and ticks % 512 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("enumeration time budget exceeded")
        unassigned = full & ~((1 << v) - 1)
        if v == n:
            if len(masks) == k and all(_mask_connected(nbr, m) for m in masks):
                yielded += 1
                if yielded > budget.max_partitions:
                    raise BudgetExceeded(
                        f"more than {budget.max_partitions} partitions"
                    )
                yield decode()
            return
        if len(masks) + (n - v) < k:
            return
        # A class with no unassigned neighbor can never change again: if it
        # is disconnected now, the whole branch is dead.
        for m, nb in zip(masks, nbrs):
            if nb & unassigned == 0 and not _mask_connected(nbr, m):
                return
        bit = 1 << v
        for c in range(len(masks)):
            if nbrs[c] & unassigned == 0:
                continue  # closed class: v could never reconnect to it
            masks[c] |= bit
            nbrs[c] |= nbr[v]
            yield from recurse(v + 1)
            masks[c] &= ~bit
            nbrs[c] = 0
            for w in range(n):
                if masks[c] >> w & 1:
                    nbrs[c] |= nbr[w]
        if len(masks) < k:
            masks.append(bit)
            nbrs.append(nbr[v])
            yield from recurse(v + 1)
            masks.pop()
            nbrs.pop()

    yield from recurse(1)


def _signature(p: Partition) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(c)) for c in p))


def exact_minmax(
    g: WeightedGraph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> tuple[int, Partition]:
    """Minimum heaviest-class weight over all connected k-partitions, with a
    witness (ties: lexicographically smallest class signature)."""
    best: tuple[int, tuple, Partition] | None = None
    for p in enumerate_connected_kpartitions(g, k, budget):
        value = max(g.weight(c) for c in p)
        if best is None or value < best[0]:
            best = (value, _signature(p), p)
        elif value == best[0]:
            sig = _signature(p)
            if sig < best[1]:
                best = (value, sig, p)
    assert best is not None  # every connected graph has a connected k-partition
    return best[0], best[2]


def exact_maxmin(
    g: WeightedGraph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> tuple[int, Partition]:
    """Maximum lightest-class weight over all connected k-partitions, with a
    witness (ties: lexicographically smallest class signature)."""
    best: tuple[int, tuple, Partition] | None = None
    for p in enumerate_connected_kpartitions(g, k, budget):
        value = min(g.weight(c) for c in p)
        if best is None or value > best[0]:
            best = (value, _signature(p), p)
        elif value == best[0]:
            sig = _signature(p)
            if sig < best[1]:
                best = (value, sig, p)
    assert best is not None
    return best[0], best[2]


def oracle_pull_admissible(
    g: WeightedGraph, p: Partition, i: int, max_subset_base: int = 20
) -> VertexSet | None:
    """Exhaustively search V3 for a pull-admissible subset w.r.t. class i.

    Checks every nonempty proper subset U of V3 for: both G[Vi+U] and
    G[V3-U] connected and w(Vi+U) < w(V3).  Test-support only; the fast
    path is bcp.minmax.pull_check.
    """
    if i not in (1, 2):
        raise ContractViolation("class index must be 1 or 2")
    v3 = p[2]
    vi = p[i - 1]
    if len(v3) > max_subset_base:
        raise BudgetExceeded(f"|V3|={len(v3)} exceeds subset budget {max_subset_base}")
    w3 = g.weight(v3)
    members = sorted(v3)
    for r in range(1, len(members)):
        for combo in combinations(members, r):
            u = frozenset(combo)
            if g.weight(vi) + g.weight(u) >= w3:
                continue
            if is_connected(g, vi | u) and is_connected(g, v3 - u):
                return u
    return None
