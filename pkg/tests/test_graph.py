import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcp.errors import ContractViolation, InputError
from bcp.graph import (
    WeightedGraph,
    boundary_neighbors,
    components,
    is_connected,
    non_cut_vertex,
    split_two,
)

from .conftest import connected_graphs, path_graph, star_graph, triangle_graph


def fs(*vs):
    return frozenset(vs)


class TestConstruction:
    def test_rejects_loop(self):
        with pytest.raises(InputError):
            WeightedGraph.from_edges(2, [(0, 0), (0, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(InputError):
            WeightedGraph.from_edges(2, [(0, 1), (1, 0)])

    def test_rejects_disconnected(self):
        with pytest.raises(InputError):
            WeightedGraph.from_edges(4, [(0, 1), (2, 3)])

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(InputError):
            WeightedGraph.from_edges(2, [(0, 1)], [1, 0])

    def test_adjacency_sorted_and_totals(self):
        g = WeightedGraph.from_edges(3, [(2, 0), (0, 1)], [5, 2, 3])
        assert g.adjacency[0] == (1, 2)
        assert g.total_weight == 10
        assert g.m == 2
        assert g.edges() == [(0, 1), (0, 2)]


class TestComponents:
    def test_path_connected(self):
        g = path_graph(3)
        assert components(g, fs(0, 1, 2)) == [fs(0, 1, 2)]

    def test_path_middle_removed(self):
        g = path_graph(3)
        assert components(g, fs(0, 2)) == [fs(0), fs(2)]

    def test_star_leaves_are_singletons(self):
        g = star_graph(5)
        assert components(g, fs(1, 2, 3, 4)) == [fs(1), fs(2), fs(3), fs(4)]

    def test_empty_set_is_contract_violation(self):
        with pytest.raises(ContractViolation):
            components(path_graph(3), frozenset())


class TestIsConnected:
    def test_path_prefix(self):
        assert is_connected(path_graph(3), fs(0, 1))

    def test_path_gap(self):
        assert not is_connected(path_graph(3), fs(0, 2))

    def test_empty_is_not_connected(self):
        assert not is_connected(path_graph(3), frozenset())


class TestNonCutVertex:
    def test_path_returns_far_endpoint(self):
        assert non_cut_vertex(path_graph(3), fs(0, 1, 2)) == 2

    def test_triangle(self):
        assert non_cut_vertex(triangle_graph(), fs(0, 1, 2)) == 2

    def test_star_never_returns_center(self):
        g = star_graph(5)
        assert non_cut_vertex(g, fs(0, 1, 2, 3, 4)) in {1, 2, 3, 4}

    def test_too_small_rejected(self):
        with pytest.raises(ContractViolation):
            non_cut_vertex(path_graph(3), fs(0))

    def test_disconnected_rejected(self):
        with pytest.raises(ContractViolation):
            non_cut_vertex(path_graph(3), fs(0, 2))


class TestSplitTwo:
    def test_path_deterministic(self):
        assert split_two(path_graph(3), fs(0, 1, 2)) == (fs(0), fs(1, 2))

    def test_star_isolates_one_leaf(self):
        # Any spanning-tree edge deletion on a star cuts off one leaf, so
        # the split shape is forced; the balanced tie-break picks edge (0,1).
        g = star_graph(4)
        a, b = split_two(g, fs(0, 1, 2, 3))
        assert (a, b) == (fs(0, 2, 3), fs(1))
        assert g.weight(a) == 3 and g.weight(b) == 1

    def test_single_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1)], [5, 7])
        assert split_two(g, fs(0, 1)) == (fs(0), fs(1))

    def test_too_small_rejected(self):
        with pytest.raises(ContractViolation):
            split_two(path_graph(3), fs(1))


class TestBoundaryNeighbors:
    def test_path_one_side(self):
        g = path_graph(5)
        assert boundary_neighbors(g, fs(0), fs(1, 2, 3)) == [1]

    def test_path_both_sides(self):
        g = path_graph(5)
        assert boundary_neighbors(g, fs(0, 4), fs(1, 2, 3)) == [1, 3]

    def test_non_adjacent(self):
        g = path_graph(5)
        assert boundary_neighbors(g, fs(0), fs(3, 4)) == []

    def test_overlap_rejected(self):
        with pytest.raises(ContractViolation):
            boundary_neighbors(path_graph(3), fs(0, 1), fs(1, 2))


@st.composite
def graph_and_subset(draw):
    g = draw(connected_graphs(min_n=2, max_n=9))
    members = draw(
        st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n)
    )
    return g, frozenset(members)


@given(graph_and_subset())
def test_components_partition_the_subset(case):
    g, s = case
    comps = components(g, s)
    union = set()
    for c in comps:
        assert c, "no empty components"
        assert is_connected(g, c)
        assert not (union & c), "components are pairwise disjoint"
        union |= c
    assert union == s
    assert is_connected(g, s) == (len(comps) == 1)


@given(connected_graphs(min_n=2, max_n=9))
def test_non_cut_vertex_keeps_connectivity(g):
    s = frozenset(range(g.n))
    u = non_cut_vertex(g, s)
    assert is_connected(g, s - {u})


@given(connected_graphs(min_n=2, max_n=9))
def test_split_two_yields_connected_halves(g):
    s = frozenset(range(g.n))
    a, b = split_two(g, s)
    assert a and b
    assert a | b == s and not (a & b)
    assert is_connected(g, a) and is_connected(g, b)


def _transitive_closure_components(g, s):
    """Independent oracle: boolean reachability closure over members of s."""
    members = sorted(s)
    idx = {v: i for i, v in enumerate(members)}
    reach = [[u == v for v in members] for u in members]
    for u in members:
        for v in g.adjacency[u]:
            if v in s:
                reach[idx[u]][idx[v]] = True
    for mid in range(len(members)):
        for a in range(len(members)):
            if reach[a][mid]:
                row_a, row_m = reach[a], reach[mid]
                for b in range(len(members)):
                    if row_m[b]:
                        row_a[b] = True
    comps = []
    assigned = set()
    for i, u in enumerate(members):
        if u in assigned:
            continue
        comp = frozenset(v for j, v in enumerate(members) if reach[i][j])
        comps.append(comp)
        assigned |= comp
    return comps


def test_components_agree_with_transitive_closure_oracle():
    rng = random.Random(404)
    for trial in range(200):
        n = rng.randint(2, 20)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        present = {(min(u, v), max(u, v)) for u, v in edges}
        missing = [
            (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present
        ]
        edges += rng.sample(missing, min(len(missing), rng.randint(0, n)))
        g = WeightedGraph.from_edges(n, edges)
        size = rng.randint(1, n)
        s = frozenset(rng.sample(range(n), size))
        assert components(g, s) == _transitive_closure_components(g, s)
