"""Unit disk graph model: weighted plane points, closed-disk adjacency, instance I/O."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PointNode:
    id: int
    x: float
    y: float
    weight: float = 1.0


class UnitDiskGraph:
    """Immutable geometric graph; edge uv exists iff ``dx*dx + dy*dy <= 1``.

    Nodes are kept in id order and ids are dense ``0..n-1``. Edge lengths are
    stored under the canonical key ``(min(u, v), max(u, v))``.
    """

    __slots__ = ("_nodes", "_adj", "_lengths")

    def __init__(self, nodes: Sequence[PointNode]):
        nodes = tuple(sorted(nodes, key=lambda p: p.id))
        _validate_nodes(nodes)
        adj: list[set[int]] = [set() for _ in nodes]
        lengths: dict[Edge, float] = {}
        for i, p in enumerate(nodes):
            for q in nodes[i + 1:]:
                dx = p.x - q.x
                dy = p.y - q.y
                if dx * dx + dy * dy <= 1.0:
                    adj[p.id].add(q.id)
                    adj[q.id].add(p.id)
                    lengths[(p.id, q.id)] = math.hypot(dx, dy)
        self._nodes = nodes
        self._adj = tuple(frozenset(a) for a in adj)
        self._lengths = lengths

    @property
    def nodes(self) -> tuple[PointNode, ...]:
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._nodes)

    @property
    def node_ids(self) -> range:
        return range(len(self._nodes))

    @property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(enumerate(self._adj))

    @property
    def edges(self) -> list[Edge]:
        """All edges, sorted ascending."""
        return sorted(self._lengths)

    @property
    def num_edges(self) -> int:
        return len(self._lengths)

    def neighbors(self, u: int) -> frozenset[int]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def length(self, u: int, v: int) -> float:
        try:
            return self._lengths[edge_key(u, v)]
        except KeyError:
            raise KeyError(f"no edge {u}-{v}") from None

    def weight(self, u: int) -> float:
        return self._nodes[u].weight

    @property
    def weights(self) -> list[float]:
        return [p.weight for p in self._nodes]

    def position(self, u: int) -> tuple[float, float]:
        p = self._nodes[u]
        return (p.x, p.y)

    def set_weight(self, v: Iterable[int]) -> float:
        return sum(self._nodes[u].weight for u in v)

    def induced_adjacency(self, keep: Iterable[int]) -> dict[int, frozenset[int]]:
        keep = set(keep)
        return {u: self._adj[u] & keep for u in sorted(keep)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitDiskGraph):
            return NotImplemented
        return self._nodes == other._nodes

    def __hash__(self) -> int:
        return hash(self._nodes)

    def __repr__(self) -> str:
        return f"UnitDiskGraph(n={self.n}, edges={self.num_edges})"


def _validate_nodes(nodes: Sequence[PointNode]) -> None:
    seen: set[int] = set()
    for p in nodes:
        if p.id in seen:
            raise ValidationError(f"duplicate node id {p.id}")
        seen.add(p.id)
        if not (math.isfinite(p.x) and math.isfinite(p.y)):
            raise ValidationError(f"node {p.id}: non-finite coordinate ({p.x}, {p.y})")
        if not math.isfinite(p.weight) or p.weight < 0:
            raise ValidationError(f"node {p.id}: negative or non-finite weight {p.weight}")
    if seen != set(range(len(nodes))):
        raise ValidationError(f"node ids must be contiguous from 0, got {sorted(seen)}")


def build_udg(points: Iterable[PointNode]) -> UnitDiskGraph:
    return UnitDiskGraph(list(points))


@dataclass(frozen=True)
class EdgeSubgraph:
    """A subset of host edges, plus optionally some isolated host nodes."""

    host: UnitDiskGraph
    edges: frozenset[Edge]
    isolated: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset(edge_key(u, v) for u, v in self.edges)
        for u, v in edges:
            if u == v or not (0 <= u < self.host.n) or not self.host.has_edge(u, v):
                raise ValidationError(f"edge {u}-{v} is not an edge of the host graph")
        for u in self.isolated:
            if not 0 <= u < self.host.n:
                raise ValidationError(f"unknown node {u}")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "isolated", frozenset(self.isolated))

    @classmethod
    def of(cls, host: UnitDiskGraph, edges: Iterable[Edge], nodes: Iterable[int] = ()) -> EdgeSubgraph:
        return cls(host, frozenset(edges), frozenset(nodes))

    @classmethod
    def full(cls, host: UnitDiskGraph) -> EdgeSubgraph:
        return cls(host, frozenset(host.edges), frozenset(host.node_ids))

    @property
    def nodes(self) -> frozenset[int]:
        span = set(self.isolated)
        for u, v in self.edges:
            span.add(u)
            span.add(v)
        return frozenset(span)

    @property
    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {u: set() for u in sorted(self.nodes)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, u: int) -> int:
        return sum(1 for e in self.edges if u in e)

    def length(self) -> float:
        return subgraph_length(self)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edges(self, edges: Iterable[Edge]) -> EdgeSubgraph:
        return EdgeSubgraph(self.host, frozenset(edges), self.isolated)


def subgraph_length(F: EdgeSubgraph) -> float:
    return math.fsum(F.host.length(u, v) for u, v in F.edges)


# -- instance files -----------------------------------------------------------

_FIELDS = ("id", "x", "y", "w")


def write_instance(g: UnitDiskGraph) -> str:
    nodes = [{"id": p.id, "x": p.x, "y": p.y, "w": p.weight} for p in g.nodes]
    return json.dumps({"nodes": nodes}, indent=1) + "\n"


def parse_instance(text: str) -> UnitDiskGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise ValidationError("instance must be a JSON object with a 'nodes' list")
    points = []
    seen: set[int] = set()
    for i, rec in enumerate(doc["nodes"]):
        if not isinstance(rec, Mapping):
            raise ValidationError(f"nodes[{i}]: expected an object")
        for name in _FIELDS:
            if name not in rec:
                raise ValidationError(f"nodes[{i}]: missing field '{name}'")
        nid = rec["id"]
        if isinstance(nid, bool) or not isinstance(nid, int) or nid < 0:
            raise ValidationError(f"nodes[{i}].id: expected a nonnegative integer, got {nid!r}")
        if nid in seen:
            raise ValidationError(f"nodes[{i}].id: duplicate id {nid}")
        seen.add(nid)
        vals = []
        for name in ("x", "y", "w"):
            val = rec[name]
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ValidationError(f"nodes[{i}].{name}: expected a number, got {val!r}")
            vals.append(float(val))
        if vals[2] < 0:
            raise ValidationError(f"nodes[{i}].w: negative weight {vals[2]}")
        points.append(PointNode(nid, vals[0], vals[1], vals[2]))
    return build_udg(points)


def load_instance(path) -> UnitDiskGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(g: UnitDiskGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_instance(g))


# -- generators ---------------------------------------------------------------

_NEAR_UNIT = 1e-9


def random_instance(
    n: int,
    side: float,
    weight_range: tuple[float, float] = (1.0, 1.0),
    seed: int | None = 0,
) -> UnitDiskGraph:
    """Uniform points in ``[0, side]^2`` with uniform weights.

    Points landing within 1e-9 of unit distance from an earlier point are
    redrawn so adjacency is never decided by rounding.
    """
    lo, hi = weight_range
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not side > 0:
        raise ValidationError(f"side must be positive, got {side}")
    if not 0 <= lo <= hi:
        raise ValidationError(f"weight range must satisfy 0 <= lo <= hi, got [{lo}, {hi}]")
    rng = random.Random(seed)
    pts: list[tuple[float, float]] = []
    while len(pts) < n:
        x, y = rng.uniform(0.0, side), rng.uniform(0.0, side)
        if any(abs(math.hypot(x - a, y - b) - 1.0) < _NEAR_UNIT for a, b in pts):
            continue
        pts.append((x, y))
    weights = [rng.uniform(lo, hi) for _ in range(n)]
    return build_udg(PointNode(i, x, y, w) for i, ((x, y), w) in enumerate(zip(pts, weights)))


def induced_udg(g: UnitDiskGraph, keep: Iterable[int]) -> tuple[UnitDiskGraph, list[int]]:
    """The UDG on a subset of g's points, relabelled densely.

    Returns the new graph and ``originals`` with ``originals[new_id] = old_id``.
    """
    originals = sorted(set(keep))
    pts = [PointNode(i, g.nodes[u].x, g.nodes[u].y, g.nodes[u].weight) for i, u in enumerate(originals)]
    return build_udg(pts), originals
