"""Node-weighted k-connected Steiner networks via subset k-connected subgraphs.

Node costs become edge weights ``w(uv) = (c(u) + c(v)) / 2``; a subset
k-connected subgraph solver (exhaustive or augmenting-path heuristic) picks an
edge set F0 that gives the terminals k disjoint paths pairwise; separator
descent then cuts F0 down to a k-connected piece holding every terminal.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

from .connectivity import (
    adjacency,
    components,
    edges_subset_k_connected,
    find_separator,
    induced,
    is_k_connected,
    is_subset_k_connected,
)
from .errors import CapExceededError, InfeasibleError, ValidationError
from .search import lightest_feasible
from .udg import Edge, EdgeSubgraph, UnitDiskGraph, edge_key

DEFAULT_EDGE_CAP = 22
_EPS = 1e-12


def derive_edge_weights(g: UnitDiskGraph, node_costs: Sequence[float]) -> dict[Edge, float]:
    if len(node_costs) != g.n:
        raise ValidationError(f"expected {g.n} node costs, got {len(node_costs)}")
    if any(c < 0 for c in node_costs):
        raise ValidationError("node costs must be nonnegative")
    return {(u, v): (node_costs[u] + node_costs[v]) / 2.0 for u, v in g.edges}


@dataclass(frozen=True)
class SkcsInstance:
    graph: UnitDiskGraph
    terminals: tuple[int, ...]
    k: int
    edge_weights: Mapping[Edge, float]

    @classmethod
    def build(cls, g: UnitDiskGraph, node_costs: Sequence[float], terminals: Iterable[int], k: int) -> SkcsInstance:
        T = tuple(sorted(set(terminals)))
        if k < 1:
            raise ValidationError("k must be >= 1")
        for t in T:
            if not 0 <= t < g.n:
                raise ValidationError(f"unknown terminal {t}")
            if node_costs[t] != 0:
                raise ValidationError(f"terminal {t} must have cost zero")
        return cls(g, T, k, derive_edge_weights(g, node_costs))

    def weight(self, edges: Iterable[Edge]) -> float:
        return math.fsum(self.edge_weights[edge_key(*e)] for e in edges)


def skcs_exact(inst: SkcsInstance, cap: int = DEFAULT_EDGE_CAP) -> EdgeSubgraph:
    """Minimum-weight edge set giving every terminal pair k disjoint paths (branch and bound)."""
    g, T, k = inst.graph, inst.terminals, inst.k
    if g.num_edges > cap:
        raise CapExceededError(f"{g.num_edges} edges exceed the exhaustive-search cap {cap}")
    n = g.n
    edges = sorted(g.edges, key=lambda e: (inst.edge_weights[e], e))
    if not edges_subset_k_connected(n, edges, T, k):
        raise InfeasibleError(f"terminals are not {k}-connected even in the full graph")
    if len(T) < 2:
        return EdgeSubgraph(g, frozenset(), frozenset(T))
    w = [inst.edge_weights[e] for e in edges]
    m = len(edges)
    terminal_incident = {t: [i for i, e in enumerate(edges) if t in e] for t in T}
    deg = {t: 0 for t in T}
    chosen: list[int] = []
    best = [math.inf, None]

    def lower_bound(i: int) -> float:
        total = 0.0
        for t in T:
            need = k - deg[t]
            for j in terminal_incident[t]:
                if need <= 0:
                    break
                if j >= i:
                    total += w[j]
                    need -= 1
        return total / 2.0

    def bump(i: int, by: int) -> None:
        for x in edges[i]:
            if x in deg:
                deg[x] += by

    def search(i: int, acc: float) -> None:
        if acc + lower_bound(i) >= best[0] - _EPS:
            return
        if min(deg.values()) >= k and edges_subset_k_connected(n, [edges[j] for j in chosen], T, k):
            best[0], best[1] = acc, list(chosen)
            return
        if i == m:
            return
        chosen.append(i)
        bump(i, 1)
        search(i + 1, acc + w[i])
        bump(i, -1)
        chosen.pop()
        if edges_subset_k_connected(n, [edges[j] for j in chosen] + edges[i + 1:], T, k):
            search(i + 1, acc)

    search(0, 0.0)
    return EdgeSubgraph(g, frozenset(edges[j] for j in best[1]), frozenset(T))


class _Residual:
    """Split digraph over all host edges; arcs of F0 cost 0, others cost w(e)."""

    def __init__(self, g: UnitDiskGraph):
        self.n = g.n
        self.first = [-1] * (2 * g.n)
        self.to: list[int] = []
        self.cap: list[int] = []
        self.nxt: list[int] = []
        self.edge: list[Edge | None] = []
        for w in range(g.n):
            self._arc(2 * w, 2 * w + 1, None)
        for u, v in g.edges:
            self._arc(2 * u + 1, 2 * v, (u, v))
            self._arc(2 * v + 1, 2 * u, (u, v))
        self.base = list(self.cap)

    def _arc(self, a: int, b: int, e: Edge | None) -> None:
        for src, dst, c in ((a, b, 1), (b, a, 0)):
            self.to.append(dst)
            self.cap.append(c)
            self.edge.append(e)
            self.nxt.append(self.first[src])
            self.first[src] = len(self.to) - 1

    def reset(self) -> None:
        self.cap[:] = self.base

    def _arcs(self, a: int):
        e = self.first[a]
        while e != -1:
            yield e
            e = self.nxt[e]

    def _push(self, parent: list[int], src: int, sink: int) -> None:
        b = sink
        while b != src:
            e = parent[b]
            self.cap[e] -= 1
            self.cap[e ^ 1] += 1
            b = self.to[e ^ 1]

    def flow_within(self, s: int, t: int, allowed: set[Edge], limit: int) -> int:
        """Unit augmentations from out(s) to in(t) using only edges in ``allowed``."""
        src, sink = 2 * s + 1, 2 * t
        total = 0
        while total < limit:
            parent = [-2] * (2 * self.n)
            parent[src] = -1
            stack = [src]
            while stack and parent[sink] == -2:
                a = stack.pop()
                for e in self._arcs(a):
                    b = self.to[e]
                    if self.cap[e] > 0 and parent[b] == -2 and (self.edge[e] is None or self.edge[e] in allowed):
                        parent[b] = e
                        stack.append(b)
            if parent[sink] == -2:
                break
            self._push(parent, src, sink)
            total += 1
        return total

    def cheapest_augmentation(self, s: int, t: int, in_f0: set[Edge], weights: Mapping[Edge, float]) -> list[Edge]:
        """Dijkstra over the residual graph; returns host edges of the path not yet in F0."""
        src, sink = 2 * s + 1, 2 * t
        dist = [math.inf] * (2 * self.n)
        parent = [-2] * (2 * self.n)
        dist[src] = 0.0
        parent[src] = -1
        heap = [(0.0, src)]
        while heap:
            d, a = heapq.heappop(heap)
            if d > dist[a]:
                continue
            if a == sink:
                break
            for e in self._arcs(a):
                if self.cap[e] <= 0:
                    continue
                b = self.to[e]
                key = self.edge[e]
                cost = 0.0 if key is None or key in in_f0 else weights[key]
                if d + cost < dist[b]:
                    dist[b] = d + cost
                    parent[b] = e
                    heapq.heappush(heap, (dist[b], b))
        if parent[sink] == -2:
            raise InfeasibleError(f"no augmenting path between {s} and {t}")
        new: list[Edge] = []
        b = sink
        while b != src:
            e = parent[b]
            if self.edge[e] is not None and self.edge[e] not in in_f0:
                new.append(self.edge[e])
            b = self.to[e ^ 1]
        self._push(parent, src, sink)
        return new


def skcs_augment(inst: SkcsInstance) -> EdgeSubgraph:
    """Successive shortest augmentation, connectivity level by level.

    For l = 1..k and terminal pairs (s, t) in lexicographic order, a pair with
    fewer than l disjoint paths in F0 gets its l-1 paths routed inside F0 and
    then the cheapest residual augmenting path; the path's new edges join F0.
    """
    g, T, k = inst.graph, inst.terminals, inst.k
    if not is_k_connected(g, k):
        raise InfeasibleError(f"graph is not {k}-connected")
    f0: set[Edge] = set()
    net = _Residual(g)
    for level in range(1, k + 1):
        for i, s in enumerate(T):
            for t in T[i + 1:]:
                net.reset()
                have = net.flow_within(s, t, f0, level)
                if have >= level:
                    continue
                f0.update(net.cheapest_augmentation(s, t, f0, inst.edge_weights))
    return EdgeSubgraph(g, frozenset(f0), frozenset(T))


SKCS_SOLVERS: dict[str, Callable[[SkcsInstance], EdgeSubgraph]] = {
    "exact": skcs_exact,
    "augment": skcs_augment,
}


def extract_k_block(F0: EdgeSubgraph, terminals: Iterable[int], k: int) -> tuple[EdgeSubgraph, bool]:
    """Cut F0 down to a k-connected subgraph containing every terminal.

    Starting from the component of F0 holding the terminals, repeatedly remove
    a separator S with |S| < k and keep S plus the side holding the
    remaining terminals. Only real F0 edges survive. Returns ``(F, ok)``; when
    the final verification fails, F is the terminals' component and ok is False.
    """
    T = set(terminals)
    adj = adjacency(F0)
    for t in T:
        adj.setdefault(t, set())
    start = min(T) if T else min(adj, default=None)
    comp = next((c for c in components(adj) if start in c), [])
    H = induced(adj, comp)
    fallback = _as_subgraph(F0, H)
    if not T <= set(H):
        return fallback, False
    while not is_k_connected(H, k):
        S = find_separator(H, k - 1) if len(H) > k else None
        if S is None:
            return fallback, False
        rest = T - S.nodes
        sides = [c for c in components(H, S.nodes) if rest & set(c)]
        if len(sides) != 1:
            return fallback, False
        H = induced(H, set(sides[0]) | S.nodes)
    ok = T <= set(H) and is_subset_k_connected(H, T, k)
    return (_as_subgraph(F0, H), True) if ok else (fallback, False)


def _as_subgraph(F0: EdgeSubgraph, H: Mapping[int, Iterable[int]]) -> EdgeSubgraph:
    edges = {edge_key(u, v) for u in H for v in H[u]}
    return EdgeSubgraph(F0.host, frozenset(edges), frozenset(H))


@dataclass
class SteinerSolution:
    F: EdgeSubgraph
    F0: EdgeSubgraph
    terminals: tuple[int, ...]
    k: int
    steiner_nodes: list[int]
    node_cost: float
    edge_cost: float
    solver_tag: str
    extraction_ok: bool

    @property
    def cost_slack(self) -> float:
        """(2/k) w(E(F)) - c(V(F)); nonnegative whenever F is k-connected."""
        return 2.0 / self.k * self.edge_cost - self.node_cost

    def to_dict(self) -> dict:
        return {
            "terminals": list(self.terminals),
            "k": self.k,
            "steiner_nodes": self.steiner_nodes,
            "nodes": sorted(self.F.nodes),
            "edges": [list(e) for e in self.F.sorted_edges()],
            "node_cost": self.node_cost,
            "edge_cost": self.edge_cost,
            "cost_slack": self.cost_slack,
            "solver": self.solver_tag,
            "extraction_ok": self.extraction_ok,
        }


Solver = Union[str, Callable[[SkcsInstance], EdgeSubgraph]]


def solve_mnwkcsn(
    g: UnitDiskGraph,
    node_costs: Sequence[float],
    terminals: Iterable[int],
    k: int,
    solver: Solver = "augment",
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> SteinerSolution:
    """Cheap Steiner nodes C such that G[T u C] is k-connected.

    Terminal costs are set to zero before anything else, since every feasible
    solution pays for them anyway. ``edge_cap`` bounds the exact solver only.
    """
    T = sorted(set(terminals))
    costs = list(node_costs)
    for t in T:
        if not 0 <= t < g.n:
            raise ValidationError(f"unknown terminal {t}")
        costs[t] = 0.0
    if isinstance(solver, str):
        try:
            tag, fn = solver, SKCS_SOLVERS[solver]
        except KeyError:
            raise ValidationError(f"unknown SkCS solver {solver!r}; choose from {sorted(SKCS_SOLVERS)}") from None
    else:
        tag, fn = getattr(solver, "__name__", "custom"), solver
    inst = SkcsInstance.build(g, costs, T, k)
    F0 = fn(inst, cap=edge_cap) if fn is skcs_exact else fn(inst)
    F, ok = extract_k_block(F0, T, k)
    nodes = sorted(F.nodes)
    return SteinerSolution(
        F=F,
        F0=F0,
        terminals=tuple(T),
        k=k,
        steiner_nodes=[v for v in nodes if v not in set(T)],
        node_cost=math.fsum(costs[v] for v in nodes),
        edge_cost=inst.weight(F.edges),
        solver_tag=tag,
        extraction_ok=ok,
    )


def exact_mnwkcsn(
    g: UnitDiskGraph, node_costs: Sequence[float], terminals: Iterable[int], k: int, cap: int = 16
) -> tuple[list[int], float] | None:
    """Exhaustive oracle: cheapest C with G[T u C] k-connected, or None."""
    if g.n > cap:
        raise CapExceededError(f"{g.n} nodes exceed the exhaustive-search cap {cap}")
    T = sorted(set(terminals))
    free = [v for v in g.node_ids if v not in set(T)]
    adj = g.adjacency
    res = lightest_feasible(
        free,
        [node_costs[v] for v in free],
        lambda C: is_k_connected(induced(adj, set(T) | set(C)), k),
    )
    if res is None:
        return None
    C, w = res
    return list(C), w
