import math
import random

import pytest

from ftb.bench import k_connected_instance
from ftb.connectivity import is_k_connected, is_subset_k_connected
from ftb.errors import CapExceededError, InfeasibleError, ValidationError
from ftb.fixtures import path3, pent5, sq4
from ftb.steiner import (
    SkcsInstance,
    derive_edge_weights,
    exact_mnwkcsn,
    extract_k_block,
    skcs_augment,
    skcs_exact,
    solve_mnwkcsn,
)
from ftb.udg import EdgeSubgraph, random_instance

from conftest import graph_from_points, points_of
from oracles import from_edges, induced, is_k_connected as brute_k_connected, mnwkcsn, skcs_weight, udg_adjacency


def _costs(g, T):
    return [0.0 if v in T else g.weight(v) for v in g.node_ids]


def test_edge_weights_are_endpoint_means():
    g = graph_from_points([(0, 0), (0.5, 0)], [2, 4])
    assert derive_edge_weights(g, [2, 4]) == {(0, 1): 3.0}
    assert math.fsum(derive_edge_weights(pent5(), [1] * 5).values()) == 5
    with pytest.raises(ValidationError):
        derive_edge_weights(pent5(), [1, 1])
    with pytest.raises(ValidationError):
        derive_edge_weights(path3(), [1, -1, 1])


def test_edge_weight_sum_is_degree_weighted_node_sum():
    rng = random.Random(1)
    for _ in range(10):
        g = random_instance(9, 1.6, (0, 5), seed=rng.getrandbits(32))
        F = EdgeSubgraph.full(g)
        w = derive_edge_weights(g, g.weights)
        lhs = math.fsum(w.values())
        rhs = math.fsum(g.weight(v) * F.degree(v) for v in g.node_ids) / 2
        assert math.isclose(lhs, rhs, abs_tol=1e-9)


def test_instance_requires_free_terminals():
    with pytest.raises(ValidationError, match="cost zero"):
        SkcsInstance.build(sq4(), [1, 1, 1, 1], [0, 1], 2)
    with pytest.raises(ValidationError):
        SkcsInstance.build(sq4(), [0, 1, 1, 1], [7], 1)


@pytest.mark.parametrize("k, weight", [(1, 0.0), (2, 1.0), (3, 2.0)])
def test_sq4_pair(k, weight):
    # terminals 0, 1 cost nothing; every extra path pays for one Steiner node
    # through two half-weight edges
    g = sq4()
    costs = _costs(g, {0, 1})
    inst = SkcsInstance.build(g, costs, [0, 1], k)
    exact = skcs_exact(inst)
    assert math.isclose(inst.weight(exact.edges), weight)
    assert math.isclose(weight, skcs_weight(g.adjacency, costs, [0, 1], k))
    aug = skcs_augment(inst)
    assert is_subset_k_connected(aug, [0, 1], k)
    assert inst.weight(aug.edges) >= weight - 1e-12


def test_pent5_all_terminals_keeps_the_cycle():
    g = pent5()
    inst = SkcsInstance.build(g, [0.0] * 5, range(5), 2)
    for solver in (skcs_exact, skcs_augment):
        assert solver(inst).edges == set(g.edges)


def test_exact_errors():
    g = sq4()
    inst = SkcsInstance.build(g, [0, 0, 1, 1], [0, 1], 2)
    with pytest.raises(CapExceededError):
        skcs_exact(inst, cap=3)
    with pytest.raises(InfeasibleError):
        skcs_exact(SkcsInstance.build(path3(), [0, 1, 0], [0, 2], 2))


def test_solver_sandwich():
    """Brute force = exact <= augment, and both feasible."""
    rng = random.Random(6)
    checked = 0
    while checked < 30:
        k = 1 + checked % 3
        g, _, _ = k_connected_instance(rng.randint(k + 2, 7), k, rng.getrandbits(32))
        if g.num_edges > 13:
            continue
        T = sorted(rng.sample(range(g.n), rng.randint(2, g.n)))
        costs = _costs(g, set(T))
        inst = SkcsInstance.build(g, costs, T, k)
        ref = skcs_weight(g.adjacency, costs, T, k)
        exact, aug = skcs_exact(inst), skcs_augment(inst)
        assert math.isclose(inst.weight(exact.edges), ref, abs_tol=1e-9)
        assert is_subset_k_connected(exact, T, k) and is_subset_k_connected(aug, T, k)
        assert inst.weight(aug.edges) >= ref - 1e-9
        checked += 1


# -- block extraction ------------------------------------------------------------------

def test_extract_drops_pendant():
    pts = points_of(pent5())
    r = 0.9 / (2 * math.sin(math.pi / 5))
    g = graph_from_points(pts + [(r + 0.9, 0.0)])
    assert set(g.adjacency[5]) == {0}
    F, ok = extract_k_block(EdgeSubgraph.full(g), [1, 2, 3], 2)
    assert ok
    assert F.nodes == frozenset(range(5)) and F.edges == set(pent5().edges)


def test_extract_already_k_connected():
    F0 = EdgeSubgraph.full(sq4())
    F, ok = extract_k_block(F0, [0, 2], 3)
    assert ok and F.edges == F0.edges


def test_extract_reports_failure_for_disconnected_terminals():
    F0 = EdgeSubgraph.of(path3(), [(0, 1)], [0, 1, 2])
    F, ok = extract_k_block(F0, [0, 2], 1)
    assert not ok


def test_augment_output_can_lack_a_k_block():
    # A 3-connected random instance where the augmenting heuristic gives
    # terminal 3 exactly the neighbours {0, 4, 9}, and Steiner nodes 0 and 4
    # end up with degree two. No 3-connected subgraph of F0 contains all
    # terminals, so extraction must say so rather than invent one.
    g = random_instance(10, 1.618021593796416, (1, 10), seed=70738753749706)
    assert is_k_connected(g, 3)
    D = [1, 3, 6, 8, 9]
    sol = solve_mnwkcsn(g, g.weights, D, 3)
    assert sorted(sol.F0.edges) == [
        (0, 3), (0, 6), (1, 6), (1, 8), (1, 9), (3, 4), (3, 9), (4, 8), (6, 8), (8, 9)
    ]
    assert is_subset_k_connected(sol.F0, D, 3)
    assert not sol.extraction_ok
    f0 = from_edges(g.node_ids, sol.F0.edges)
    assert mnwkcsn(f0, [1.0] * g.n, D, 3) is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_extraction_output_is_k_connected_and_holds_terminals(k):
    rng = random.Random(50 + k)
    for _ in range(12):
        g, _, _ = k_connected_instance(rng.randint(k + 3, 11), k, rng.getrandbits(32))
        T = sorted(rng.sample(range(g.n), k + 1))
        sol = solve_mnwkcsn(g, g.weights, T, k)
        if sol.extraction_ok:
            assert set(T) <= sol.F.nodes
            assert brute_k_connected(from_edges(sol.F.nodes, sol.F.edges), k)
            assert sol.F.edges <= sol.F0.edges


# -- full Steiner step -------------------------------------------------------------------

def test_mnwkcsn_examples():
    s = solve_mnwkcsn(pent5(), [1] * 5, [0, 1, 2], 2)
    assert s.steiner_nodes == [3, 4] and s.extraction_ok
    assert s.node_cost == 2
    s = solve_mnwkcsn(pent5(), [1] * 5, range(5), 2)
    assert s.steiner_nodes == [] and s.node_cost == 0
    assert exact_mnwkcsn(pent5(), [1] * 5, [0, 1, 2], 2) == ([3, 4], 2.0)
    with pytest.raises(ValidationError):
        solve_mnwkcsn(pent5(), [1] * 5, [0, 1], 2, solver="magic")
    d = s.to_dict()
    assert d["solver"] == "augment" and d["nodes"] == [0, 1, 2, 3, 4]


def test_node_cost_bounded_by_scaled_edge_cost():
    """k-connected F has min degree k, so c(V(F)) <= (2/k) w(E(F))."""
    rng = random.Random(90)
    seen = 0
    for i in range(40):
        k = 1 + i % 3
        g, _, _ = k_connected_instance(rng.randint(k + 3, 12), k, rng.getrandbits(32))
        T = sorted(rng.sample(range(g.n), rng.randint(k + 1, g.n)))
        sol = solve_mnwkcsn(g, g.weights, T, k)
        if sol.extraction_ok:
            assert sol.cost_slack >= -1e-9
            seen += 1
    assert seen > 20


def test_exact_mnwkcsn_matches_brute_force():
    rng = random.Random(33)
    for i in range(25):
        k = 1 + i % 3
        g, _, _ = k_connected_instance(rng.randint(k + 2, 9), k, rng.getrandbits(32))
        T = sorted(rng.sample(range(g.n), rng.randint(1, g.n)))
        costs = _costs(g, set(T))
        got = exact_mnwkcsn(g, costs, T, k)
        ref = mnwkcsn(udg_adjacency(points_of(g)), costs, T, k)
        assert (got is None) == (ref is None)
        if got:
            assert got[0] == list(ref[0]) and math.isclose(got[1], ref[1])
            adj = {u: set(vs) for u, vs in g.adjacency.items()}
            assert brute_k_connected(induced(adj, set(T) | set(got[0])), k)


def test_solution_cost_never_beats_the_oracle():
    rng = random.Random(44)
    for i in range(20):
        k = 1 + i % 2
        g, _, _ = k_connected_instance(rng.randint(k + 3, 9), k, rng.getrandbits(32))
        T = sorted(rng.sample(range(g.n), k + 1))
        sol = solve_mnwkcsn(g, g.weights, T, k, solver="exact", edge_cap=10**6)
        ref = exact_mnwkcsn(g, _costs(g, set(T)), T, k)
        if sol.extraction_ok:
            assert sol.node_cost >= ref[1] - 1e-9
