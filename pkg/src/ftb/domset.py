"""m-fold dominating sets: verifier, weighted greedy, exhaustive oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .connectivity import adjacency
from .errors import CapExceededError, ValidationError
from .search import lightest_feasible

WEIGHT_FLOOR = 1e-12
DEFAULT_NODE_CAP = 20


def _weights(g: Any, weights: Sequence[float] | None) -> list[float]:
    if weights is not None:
        return list(weights)
    return list(g.weights)


def _check_ids(adj, D) -> set[int]:
    D = set(D)
    unknown = D - set(adj)
    if unknown:
        raise ValidationError(f"unknown node id(s) {sorted(unknown)}")
    return D


def is_mfold_ds(g: Any, D: Iterable[int], m: int) -> bool:
    """Every node outside D has at least m neighbours in D."""
    adj = adjacency(g)
    D = _check_ids(adj, D)
    return all(len(adj[v] & D) >= m for v in adj if v not in D)


@dataclass
class DominationState:
    """Chosen set plus each node's remaining demand (0 for members of the set)."""

    adj: dict[int, set[int]]
    m: int
    chosen: set[int]
    residual_demand: dict[int, int]

    @classmethod
    def start(cls, g: Any, m: int, D: Iterable[int] = ()) -> DominationState:
        adj = adjacency(g)
        D = _check_ids(adj, D)
        residual = {v: 0 if v in D else max(0, m - len(adj[v] & D)) for v in adj}
        return cls(adj, m, D, residual)

    @property
    def total_deficiency(self) -> int:
        return sum(self.residual_demand.values())

    def gain(self, v: int) -> int:
        """Deficiency removed by adding v."""
        if v in self.chosen:
            return 0
        r = self.residual_demand
        return r[v] + sum(1 for w in self.adj[v] if r[w] > 0)

    def add(self, v: int) -> None:
        self.chosen.add(v)
        self.residual_demand[v] = 0
        for w in self.adj[v]:
            if self.residual_demand[w] > 0:
                self.residual_demand[w] -= 1


def forced_members(g: Any, m: int) -> list[int]:
    """Nodes of degree < m; they cannot be dominated m times, so every solution holds them."""
    adj = adjacency(g)
    return sorted(v for v in adj if len(adj[v]) < m)


def greedy_mfold_ds(g: Any, m: int, weights: Sequence[float] | None = None) -> list[int]:
    """Weighted greedy: forced members first, then best deficiency-per-weight node.

    Weights are floored at 1e-12, so zero-weight nodes are taken before
    anything with positive weight and equal gain.
    """
    if m <= 0:
        return []
    w = _weights(g, weights)
    state = DominationState.start(g, m, forced_members(g, m))
    while state.total_deficiency > 0:
        best, best_ratio = None, -1.0
        for v in sorted(state.adj):
            if v in state.chosen:
                continue
            ratio = state.gain(v) / max(w[v], WEIGHT_FLOOR)
            if ratio > best_ratio:
                best, best_ratio = v, ratio
        state.add(best)
    return sorted(state.chosen)


def exact_mfold_ds(
    g: Any, m: int, weights: Sequence[float] | None = None, cap: int = DEFAULT_NODE_CAP
) -> list[int]:
    adj = adjacency(g)
    if len(adj) > cap:
        raise CapExceededError(f"{len(adj)} nodes exceed the exhaustive-search cap {cap}")
    if m <= 0:
        return []
    w = _weights(g, weights)
    forced = forced_members(adj, m)
    free = [v for v in sorted(adj) if v not in set(forced)]
    res = lightest_feasible(
        free, [w[v] for v in free], lambda D: is_mfold_ds(adj, D, m), forced, sum(w[v] for v in forced)
    )
    assert res is not None, "the full node set always dominates"
    return list(res[0])
