import itertools
import logging
import random

import networkx as nx
import pytest
from hypothesis import given

from ftb.bench import k_connected_instance
from ftb.connectivity import (
    components,
    find_separator,
    is_k_connected,
    is_subset_k_connected,
    k_block_tree,
    marked_components,
    max_disjoint_paths,
    vertex_connectivity,
)
from ftb.errors import ValidationError
from ftb.fixtures import bowtie, hex7, path3, pent5, sq4
from ftb.udg import EdgeSubgraph

from conftest import graph_from_points, point_lists, random_points
from oracles import connectivity, is_connected, min_separating_set, udg_adjacency


# -- disjoint paths -----------------------------------------------------------

def test_disjoint_path_examples():
    g = sq4()
    assert all(max_disjoint_paths(g, u, v) == 3 for u, v in itertools.combinations(range(4), 2))
    assert max_disjoint_paths(path3(), 0, 2) == 1
    assert max_disjoint_paths(pent5(), 0, 1) == 2


def test_witness_paths_are_valid_and_disjoint():
    g = hex7()
    count, paths = max_disjoint_paths(g, 1, 4, witness=True)
    assert count == 3 == len(paths)
    inner = [set(p[1:-1]) for p in paths]
    for a, b in itertools.combinations(inner, 2):
        assert not a & b
    for p in paths:
        assert p[0] == 1 and p[-1] == 4
        assert all(g.has_edge(x, y) for x, y in zip(p, p[1:]))


@pytest.mark.parametrize("u, v", [(0, 0), (0, 9)])
def test_disjoint_paths_bad_endpoints(u, v):
    with pytest.raises(ValidationError):
        max_disjoint_paths(sq4(), u, v)


def test_works_on_plain_adjacency_and_subgraphs():
    cycle = EdgeSubgraph.of(sq4(), [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert max_disjoint_paths(cycle, 0, 2) == 2
    assert max_disjoint_paths({0: {1}, 1: {0, 2}, 2: {1}}, 0, 2) == 1


# -- connectivity ---------------------------------------------------------------

def test_connectivity_examples():
    assert vertex_connectivity(sq4()) == 3
    assert vertex_connectivity(pent5()) == 2
    assert vertex_connectivity(path3()) == 1
    assert vertex_connectivity(hex7()) == 3
    with pytest.raises(ValidationError):
        vertex_connectivity({0: set()})


def test_connectivity_matches_brute_force_and_networkx():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 9)
        pts = random_points(rng, n, 1.7)
        g = graph_from_points(pts)
        ref = connectivity(udg_adjacency(pts))
        assert vertex_connectivity(g) == ref
        G = nx.Graph(list(g.edges))
        G.add_nodes_from(g.node_ids)
        assert ref == (nx.node_connectivity(G) if n > 1 else 0)


def test_large_graphs_use_pair_family():
    # n > 12 exercises the min-degree pair family; networkx is the reference.
    rng = random.Random(9)
    for _ in range(15):
        g = graph_from_points(random_points(rng, rng.randint(13, 22), 2.2))
        G = nx.Graph(list(g.edges))
        G.add_nodes_from(g.node_ids)
        assert vertex_connectivity(g) == nx.node_connectivity(G)


@pytest.mark.parametrize("k, expected", [(1, True), (2, True), (3, False)])
def test_is_k_connected_pent5(k, expected):
    assert is_k_connected(pent5(), k) is expected


def test_small_graphs_need_k_plus_one_nodes():
    assert not is_k_connected(graph_from_points([(0, 0), (0.5, 0)]), 2)
    assert is_k_connected(graph_from_points([(0, 0), (0.5, 0)]), 1)


def test_subset_connectivity_examples(caplog):
    assert is_subset_k_connected(pent5(), range(5), 2)
    assert not is_subset_k_connected(path3(), [0, 2], 2)
    assert is_subset_k_connected(sq4(), [1, 3], 3)
    with caplog.at_level(logging.WARNING):
        assert is_subset_k_connected(sq4(), [1], 3)
    assert "vacuously" in caplog.text


# -- separators ---------------------------------------------------------------------

def test_find_separator_examples():
    assert find_separator(path3(), 1).sorted() == [1]
    assert find_separator(sq4(), 2) is None
    assert find_separator(pent5(), 2).sorted() == [0, 2]
    assert find_separator(pent5(), 1) is None


def _brute_first_separator(adj, max_size):
    for size in range(max_size + 1):
        for S in itertools.combinations(sorted(adj), size):
            if len(adj) - size >= 2 and not is_connected(adj, S):
                return list(S)
    return None


def test_find_separator_is_smallest_then_lexicographic():
    rng = random.Random(21)
    for _ in range(50):
        pts = random_points(rng, rng.randint(3, 9), 1.6)
        adj = udg_adjacency(pts)
        if not is_connected(adj):
            continue
        S = find_separator(graph_from_points(pts), 3)
        ref = _brute_first_separator(adj, 3)
        assert (S.sorted() if S else None) == ref


def test_marked_components_pent5():
    comps = marked_components(pent5(), {0, 2})
    assert [sorted(c.nodes) for c in comps] == [[0, 1, 2], [0, 2, 3, 4]]
    assert all(c.virtual == frozenset({(0, 2)}) for c in comps)
    assert comps[0].real_edges == {(0, 1), (1, 2)}
    assert comps[1].real_edges == {(0, 4), (2, 3), (3, 4)}
    assert 2 in comps[1].adjacency[0]


def test_marked_components_path3():
    comps = marked_components(path3(), {1})
    assert [c.real_edges for c in comps] == [{(0, 1)}, {(1, 2)}]
    assert all(not c.virtual for c in comps)


def test_marked_components_rejects_non_separator():
    with pytest.raises(ValidationError):
        marked_components(pent5(), {0})


def test_marked_components_stay_k_connected():
    rng = random.Random(4)
    checked = 0
    for i in range(40):
        k = 1 + i % 2
        g, _, _ = k_connected_instance(rng.randint(6, 10), k, rng.getrandbits(32), side=2.0)
        adj = g.adjacency
        for S in itertools.combinations(g.node_ids, k):
            if len(components(adj, S)) < 2:
                continue
            for comp in marked_components(g, S):
                assert is_k_connected(comp.adjacency, k)
                checked += 1
    assert checked > 20


# -- block trees ----------------------------------------------------------------------

def test_block_tree_examples():
    t = k_block_tree(path3(), 1)
    assert [sorted(b) for b in t.blocks] == [[0, 1], [1, 2]]
    assert [s.sorted() for s in t.separators] == [[1]]
    assert t.is_path() and t.leaf_blocks == [0, 1]

    t = k_block_tree(sq4(), 3)
    assert [sorted(b) for b in t.blocks] == [[0, 1, 2, 3]] and not t.separators

    t = k_block_tree(bowtie(), 1)
    assert [sorted(b) for b in t.blocks] == [[0, 1, 2], [0, 3, 4]]
    assert [s.sorted() for s in t.separators] == [[0]]
    assert t.is_path()


def test_block_tree_pent5_k2():
    t = k_block_tree(pent5(), 2)
    assert t.is_tree()
    assert len(t.blocks) == 3 and len(t.separators) == 2
    assert set().union(*t.block_edges) == set(pent5().edges)


def test_block_tree_requires_k_connected():
    with pytest.raises(ValidationError):
        k_block_tree(path3(), 2)


def _check_block_tree(g, k):
    t = k_block_tree(g, k)
    assert t.is_tree()
    for b, s in t.incidence:
        assert t.separators[s].nodes <= t.blocks[b]
    for b in t.blocks:
        sub = {u: set(g.adjacency[u]) & b for u in b}
        # blocks are K_{k+1} or (k+1)-connected once virtual edges are restored
        marked = {u: set(vs) for u, vs in sub.items()}
        for s in t.separators:
            if s.nodes <= b:
                for x, y in itertools.combinations(s.nodes, 2):
                    marked[x].add(y)
                    marked[y].add(x)
        complete = all(len(vs) == len(b) - 1 for vs in marked.values())
        assert (complete and len(b) == k + 1) or is_k_connected(marked, k + 1)
    assert set().union(*t.block_edges) == set(g.edges)
    return t


def test_block_tree_random():
    rng = random.Random(8)
    for i in range(30):
        k = 1 + i % 2
        g, _, _ = k_connected_instance(rng.randint(5, 11), k, rng.getrandbits(32), side=2.2)
        _check_block_tree(g, k)


@given(point_lists(min_size=3, max_size=9, side=2.0))
def test_menger_property(points):
    g = graph_from_points(points)
    adj = udg_adjacency(points)
    for u, v in itertools.combinations(range(len(points)), 2):
        if v not in adj[u]:
            assert max_disjoint_paths(g, u, v) == min_separating_set(adj, u, v)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_node_extension_keeps_connectivity(k):
    rng = random.Random(100 + k)
    for _ in range(15):
        n = rng.randint(k + 2, 11)
        g, _, side = k_connected_instance(n, k, rng.getrandbits(32))
        # a new point adjacent to at least k old ones
        pts = [(p.x, p.y) for p in g.nodes]
        for _ in range(200):
            q = (rng.uniform(0, side), rng.uniform(0, side))
            if sum(1 for p in pts if (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 <= 1) >= k:
                break
        else:
            continue
        h = graph_from_points(pts + [q])
        assert vertex_connectivity(h) >= k
