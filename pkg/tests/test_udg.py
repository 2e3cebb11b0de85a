import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftb.errors import ValidationError
from ftb.fixtures import fixture, hex7, path3, pent5, sq4
from ftb.udg import (
    EdgeSubgraph,
    PointNode,
    UnitDiskGraph,
    build_udg,
    induced_udg,
    parse_instance,
    random_instance,
    subgraph_length,
    write_instance,
)

from conftest import graph_from_points, point_lists
from oracles import udg_adjacency


def test_sq4_is_complete():
    g = sq4()
    assert g.num_edges == 6
    assert all(g.degree(u) == 3 for u in g.node_ids)


def test_path3_edges():
    assert path3().edges == [(0, 1), (1, 2)]


def test_pent5_is_the_cycle():
    g = pent5()
    assert g.edges == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    # diagonal of a regular pentagon with side 0.9
    diag = 0.9 * (1 + math.sqrt(5)) / 2
    assert diag > 1
    assert math.isclose(math.dist((g.nodes[0].x, g.nodes[0].y), (g.nodes[2].x, g.nodes[2].y)), diag)


def test_hex7_is_a_wheel():
    g = hex7()
    assert g.degree(0) == 6
    assert all(g.degree(u) == 3 for u in range(1, 7))


def test_unit_distance_is_an_edge():
    g = graph_from_points([(0.0, 0.0), (1.0, 0.0), (2.0000001, 0.0)])
    assert g.has_edge(0, 1)
    assert not g.has_edge(1, 2)


def test_lengths_match_coordinates():
    g = pent5()
    for u, v in g.edges:
        a, b = g.nodes[u], g.nodes[v]
        assert math.isclose(g.length(u, v), math.hypot(a.x - b.x, a.y - b.y), rel_tol=1e-12)
        assert g.length(u, v) == g.length(v, u)


@pytest.mark.parametrize(
    "nodes, message",
    [
        ([PointNode(0, 0, 0), PointNode(0, 1, 1)], "duplicate"),
        ([PointNode(0, 0, 0), PointNode(2, 1, 1)], "contiguous"),
        ([PointNode(0, math.nan, 0)], "finite"),
        ([PointNode(0, 0, math.inf)], "finite"),
        ([PointNode(0, 0, 0, -1.0)], "negative"),
    ],
)
def test_build_rejects_bad_nodes(nodes, message):
    with pytest.raises(ValidationError, match=message):
        build_udg(nodes)


def test_subgraph_length_examples():
    assert subgraph_length(EdgeSubgraph.of(sq4(), [])) == 0
    assert math.isclose(subgraph_length(EdgeSubgraph.of(path3(), [(0, 1)])), 0.9)
    cycle = EdgeSubgraph.of(sq4(), [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert math.isclose(cycle.length(), 2.4)


def test_edge_subgraph_rejects_foreign_edges():
    with pytest.raises(ValidationError):
        EdgeSubgraph.of(path3(), [(0, 2)])


def test_edge_subgraph_span_and_isolated():
    F = EdgeSubgraph.of(path3(), [(1, 0)], [2])
    assert F.edges == frozenset({(0, 1)})
    assert F.nodes == frozenset({0, 1, 2})
    assert F.degree(2) == 0


def test_round_trip():
    g = sq4()
    assert parse_instance(write_instance(g)) == g


def test_parse_ignores_edge_data():
    doc = {"nodes": [{"id": 0, "x": 0, "y": 0, "w": 1}, {"id": 1, "x": 5, "y": 0, "w": 1}], "edges": [[0, 1]]}
    assert parse_instance(json.dumps(doc)).num_edges == 0


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"nodes": [{"id": 3, "x": 0, "y": 0, "w": 1}, {"id": 3, "x": 1, "y": 0, "w": 1}]}', r"nodes\[1\].id: duplicate id 3"),
        ('{"nodes": [{"id": 0, "x": 0, "y": 0, "w": -1}]}', r"nodes\[0\].w: negative"),
        ('{"nodes": [{"id": 0, "x": 0, "y": 0}]}', r"nodes\[0\]: missing field 'w'"),
        ('{"nodes": [{"id": 0, "x": "a", "y": 0, "w": 1}]}', r"nodes\[0\].x"),
        ('{"nodes": [\n{"id": 0,,}]}', r"line 2"),
        ("[]", "'nodes' list"),
    ],
)
def test_parse_errors_carry_context(text, message):
    with pytest.raises(ValidationError, match=message):
        parse_instance(text)


def test_random_instance_is_deterministic():
    a = random_instance(12, 2.0, (1, 5), seed=7)
    b = random_instance(12, 2.0, (1, 5), seed=7)
    assert write_instance(a) == write_instance(b)
    assert write_instance(a) != write_instance(random_instance(12, 2.0, (1, 5), seed=8))


def test_random_instance_bounds():
    g = random_instance(10, 1.0, (2, 3), seed=1)
    assert 0 <= g.num_edges <= 45
    for p in g.nodes:
        assert 0 <= p.x <= 1 and 0 <= p.y <= 1 and 2 <= p.weight <= 3


def test_random_instance_avoids_near_unit_pairs():
    g = random_instance(40, 3.0, seed=3)
    for a in g.nodes:
        for b in g.nodes:
            if a.id < b.id:
                assert abs(math.hypot(a.x - b.x, a.y - b.y) - 1.0) >= 1e-9


@pytest.mark.parametrize("kwargs", [dict(n=0, side=1.0), dict(n=3, side=0.0), dict(n=3, side=1.0, weight_range=(2, 1))])
def test_random_instance_rejects(kwargs):
    with pytest.raises(ValidationError):
        random_instance(**kwargs)


def test_induced_udg_relabels():
    h, orig = induced_udg(pent5(), [4, 0, 2])
    assert orig == [0, 2, 4]
    assert h.edges == [(0, 2)]  # pentagon nodes 0 and 4 stay adjacent


@given(point_lists(max_size=9))
def test_adjacency_matches_geometry(points):
    g = graph_from_points(points)
    ref = udg_adjacency(points)
    for u in g.node_ids:
        assert set(g.neighbors(u)) == ref[u]
        for v in g.neighbors(u):
            assert u in g.neighbors(v)
            assert u != v


@given(point_lists(max_size=8), st.floats(1.001, 3.0))
def test_scaling_is_monotone(points, t):
    g = graph_from_points(points)
    bigger = graph_from_points([(x * t, y * t) for x, y in points])
    smaller = graph_from_points([(x / t, y / t) for x, y in points])
    assert set(bigger.edges) <= set(g.edges) <= set(smaller.edges)


def test_graph_is_immutable():
    g = sq4()
    with pytest.raises(AttributeError):
        g.extra = 1
    assert isinstance(g, UnitDiskGraph)
    assert fixture("sq4") == g
