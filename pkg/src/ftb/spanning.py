"""Minimum-length k-connected spanning subgraphs (k-MSS) of unit disk graphs.

Includes an exhaustive branch-and-bound oracle, single-pass minimality
reduction, the short-edge exchange, the degree-six reduction for k = 2, and a
checker for the degree and angle structure every k-MSS must have.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .connectivity import edges_k_connected
from .errors import CapExceededError, ValidationError
from .udg import Edge, EdgeSubgraph, UnitDiskGraph, edge_key

ANGLE_TOL = 1e-9
LENGTH_TOL = 1e-9
DEFAULT_EDGE_CAP = 22
_EPS = 1e-12


@dataclass
class MssReport:
    subgraph: EdgeSubgraph
    total_length: float
    max_degree: int
    min_adjacent_edge_angle: float
    violations: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "edges": [list(e) for e in self.subgraph.sorted_edges()],
            "total_length": self.total_length,
            "max_degree": self.max_degree,
            "min_adjacent_edge_angle": self.min_adjacent_edge_angle,
            "violations": self.violations,
        }


class DegreeSixError(ValidationError):
    """No legal replacement edge exists at a degree-six node."""

    def __init__(self, node: int, reason: str):
        super().__init__(f"node {node}: {reason}")
        self.node = node
        self.reason = reason


def _spanning(F: EdgeSubgraph, edges) -> EdgeSubgraph:
    return EdgeSubgraph(F.host, frozenset(edges), frozenset(F.host.node_ids))


def _is_kc(g: UnitDiskGraph, edges, k: int) -> bool:
    return edges_k_connected(g.n, edges, k)


def angle_at(g: UnitDiskGraph, u: int, a: int, b: int) -> float:
    """Angle in [0, pi] between segments ua and ub."""
    ux, uy = g.position(u)
    ax, ay = g.position(a)
    bx, by = g.position(b)
    x1, y1, x2, y2 = ax - ux, ay - uy, bx - ux, by - uy
    return math.atan2(abs(x1 * y2 - y1 * x2), x1 * x2 + y1 * y2)


def _require_k_connected_spanning(F: EdgeSubgraph, k: int) -> None:
    if not _is_kc(F.host, F.edges, k):
        raise ValidationError(f"subgraph is not a {k}-connected spanning subgraph")


def reduce_to_minimal(F: EdgeSubgraph, k: int) -> EdgeSubgraph:
    """Drop edges, longest first, while k-connectivity survives.

    One pass suffices: an edge that was needed stays needed once others go.
    """
    _require_k_connected_spanning(F, k)
    g = F.host
    kept = set(F.edges)
    for e in sorted(F.edges, key=lambda e: (-g.length(*e), e)):
        kept.discard(e)
        if not _is_kc(g, kept, k):
            kept.add(e)
    return _spanning(F, kept)


def exact_k_mss(g: UnitDiskGraph, k: int, cap: int = DEFAULT_EDGE_CAP) -> MssReport:
    """Globally shortest k-connected spanning subgraph by branch and bound.

    The incumbent starts as the locally improved minimal subgraph, so the
    search only has to beat it. Each search node forces every undecided edge
    at a node with no spare degree, bounds by half the sum over nodes of
    their cheapest missing incident edges, and branches on the shortest
    undecided edge at the most constrained node (include first). Among
    optima equal within 1e-12 the lexicographically smallest edge list wins.
    """
    m = g.num_edges
    if m > cap:
        raise CapExceededError(f"{m} edges exceed the exhaustive-search cap {cap}")
    if not _is_kc(g, g.edges, k):
        raise ValidationError(f"graph is not {k}-connected")
    n = g.n
    edges = sorted(g.edges, key=lambda e: (g.length(*e), e))
    lengths = [g.length(*e) for e in edges]
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    status = [0] * m  # 0 undecided, 1 in, -1 out
    deg = [0] * n
    spare = [len(x) for x in incident]  # undecided incident edges

    start = local_improve(reduce_to_minimal(EdgeSubgraph.full(g), k), k)
    index = {e: i for i, e in enumerate(edges)}
    best: list = [math.fsum(lengths[index[e]] for e in start.edges), sorted(start.edges)]

    def decide(i: int, value: int) -> None:
        status[i] = value
        for x in edges[i]:
            spare[x] -= 1
            if value == 1:
                deg[x] += 1

    def undo(i: int) -> None:
        value = status[i]
        status[i] = 0
        for x in edges[i]:
            spare[x] += 1
            if value == 1:
                deg[x] -= 1

    def lower_bound() -> float:
        total = 0.0
        for v in range(n):
            need = k - deg[v]
            if need <= 0:
                continue
            for j in incident[v]:
                if status[j] == 0:
                    total += lengths[j]
                    need -= 1
                    if need == 0:
                        break
        return total / 2.0

    def chosen() -> list[Edge]:
        return [edges[j] for j in range(m) if status[j] == 1]

    def search(acc: float) -> None:
        forced: list[int] = []
        feasible = True
        changed = True
        while changed and feasible:
            changed = False
            for v in range(n):
                need = k - deg[v]
                if need <= 0:
                    continue
                if spare[v] < need:
                    feasible = False
                    break
                if spare[v] == need:
                    for j in incident[v]:
                        if status[j] == 0:
                            decide(j, 1)
                            forced.append(j)
                            acc += lengths[j]
                    changed = True
        if feasible and acc + lower_bound() <= best[0] + _EPS:
            if min(deg) >= k and _is_kc(g, chosen(), k):
                found = sorted(chosen())
                if acc < best[0] - _EPS or found < best[1]:
                    best[0], best[1] = acc, found
            else:
                pick = None
                for v in range(n):
                    need = k - deg[v]
                    if need > 0 and (pick is None or spare[v] - need < pick[0]):
                        pick = (spare[v] - need, v)
                if pick is not None:
                    i = next(j for j in incident[pick[1]] if status[j] == 0)
                else:
                    i = next((j for j in range(m) if status[j] == 0), None)
                if i is not None:
                    decide(i, 1)
                    search(acc + lengths[i])
                    undo(i)
                    decide(i, -1)
                    if _is_kc(g, [edges[j] for j in range(m) if status[j] >= 0], k):
                        search(acc)
                    undo(i)
        for j in reversed(forced):
            undo(j)

    search(0.0)
    F = EdgeSubgraph(g, frozenset(best[1]), frozenset(g.node_ids))
    return check_mss_properties(F, k)


def local_improve(F: EdgeSubgraph, k: int) -> EdgeSubgraph:
    """Apply the short-edge exchange until none applies.

    At a node u with F-edges uv, uu' meeting at an angle below pi/3, where uv
    is the longer one, replace uv by vu' if that keeps k-connectivity.
    """
    _require_k_connected_spanning(F, k)
    g = F.host
    edges = set(F.edges)
    improved = True
    while improved:
        improved = False
        adj: dict[int, list[int]] = {u: [] for u in g.node_ids}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        for u in g.node_ids:
            for a, b in itertools.combinations(sorted(adj[u]), 2):
                if angle_at(g, u, a, b) >= math.pi / 3:
                    continue
                v, w = (a, b) if (g.length(u, a), a) > (g.length(u, b), b) else (b, a)
                # |vw| < |uv| <= 1 by the law of cosines, so vw is a UDG edge.
                assert g.has_edge(v, w), f"closing edge {v}-{w} missing from host"
                closing = edge_key(v, w)
                if closing in edges:
                    continue
                trial = (edges - {edge_key(u, v)}) | {closing}
                if g.length(v, w) < g.length(u, v) and _is_kc(g, trial, k):
                    edges = trial
                    improved = True
                    break
            if improved:
                break
    return _spanning(F, edges)


def clockwise_neighbors(g: UnitDiskGraph, u: int, nbrs) -> list[int]:
    """Neighbours ordered clockwise starting from the positive x-axis."""
    ux, uy = g.position(u)

    def key(v):
        x, y = g.position(v)
        return ((-math.atan2(y - uy, x - ux)) % (2 * math.pi), v)

    return sorted(nbrs, key=key)


def degree_six_reduction(F: EdgeSubgraph) -> EdgeSubgraph:
    """Remove degree-six nodes from a 2-connected spanning subgraph at equal length.

    At a degree-six node u with clockwise neighbours u_0..u_5, the first i for
    which u_i u_{i-1} is a host edge outside F, u_{i-1} has degree <= 4, the
    lengths of u u_i and u_i u_{i-1} agree, and the result stays 2-connected,
    gets ``F - u u_i + u_i u_{i-1}``. Angles below pi/3 are rejected at nodes
    of degree >= 3; at degree-2 nodes they are unavoidable (think of a thin
    triangle) and irrelevant to the degree bound.
    """
    g = F.host
    _require_k_connected_spanning(F, 2)
    edges = set(F.edges)
    adj = {u: set() for u in g.node_ids}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for u in g.node_ids:
        if len(adj[u]) < 3:
            continue
        for a, b in itertools.combinations(sorted(adj[u]), 2):
            if angle_at(g, u, a, b) < math.pi / 3 - ANGLE_TOL:
                raise ValidationError(f"angle {a}-{u}-{b} is below pi/3; apply local_improve first")
    while True:
        six = [u for u in g.node_ids if len(adj[u]) >= 6]
        if not six:
            break
        u = six[0]
        ring = clockwise_neighbors(g, u, adj[u])
        for i in range(len(ring)):
            ui, prev = ring[i], ring[i - 1]
            if not g.has_edge(ui, prev) or prev in adj[ui] or len(adj[prev]) > 4:
                continue
            if abs(g.length(u, ui) - g.length(ui, prev)) > LENGTH_TOL:
                continue
            trial = (edges - {edge_key(u, ui)}) | {edge_key(ui, prev)}
            if not _is_kc(g, trial, 2):
                continue
            edges = trial
            adj[u].discard(ui)
            adj[ui].discard(u)
            adj[ui].add(prev)
            adj[prev].add(ui)
            break
        else:
            raise DegreeSixError(u, "no legal replacement edge among its clockwise neighbours")
    return _spanning(F, edges)


def check_mss_properties(F: EdgeSubgraph, k: int) -> MssReport:
    """Recompute degree/angle structure of F and list any k-MSS property violations."""
    g = F.host
    adj: dict[int, set[int]] = {u: set() for u in g.node_ids}
    for a, b in F.edges:
        adj[a].add(b)
        adj[b].add(a)
    violations: list[dict] = []
    max_degree = max((len(s) for s in adj.values()), default=0)
    min_angle = math.pi
    for u in g.node_ids:
        d = len(adj[u])
        if d > 5 * k:
            violations.append({"kind": "degree_bound", "node": u, "degree": d, "bound": 5 * k})
        for a, b in itertools.combinations(sorted(adj[u]), 2):
            theta = angle_at(g, u, a, b)
            min_angle = min(min_angle, theta)
            if k != 2:
                continue
            if d >= 3 and b in adj[a]:
                violations.append({"kind": "adjacent_neighbors", "node": u, "pair": [a, b]})
            if d >= 3 and theta < math.pi / 3 - ANGLE_TOL:
                violations.append({"kind": "small_angle", "node": u, "pair": [a, b], "angle": theta})
            elif abs(theta - math.pi / 3) <= ANGLE_TOL and d >= 3:
                if abs(g.length(u, a) - g.length(u, b)) > LENGTH_TOL:
                    violations.append({"kind": "unequal_equilateral", "node": u, "pair": [a, b]})
    return MssReport(F, F.length(), max_degree, min_angle, violations)
