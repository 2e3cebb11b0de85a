"""Vertex connectivity: disjoint paths, separators, marked components, k-block trees.

Every function takes a "graph-like" argument: a ``UnitDiskGraph``, an
``EdgeSubgraph``, a ``MarkedComponent``, or a plain mapping from node id to
neighbour ids. Outputs are deterministic; ties are broken on sorted node ids.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from . import kernels
from .errors import ValidationError

log = logging.getLogger(__name__)

Adjacency = Mapping[int, Iterable[int]]


def adjacency(g: Any) -> dict[int, set[int]]:
    """Normalise a graph-like object to ``{node: set(neighbours)}``."""
    adj = g.adjacency if hasattr(g, "adjacency") else g
    return {u: set(vs) for u, vs in adj.items()}


def to_csr(adj: Adjacency) -> tuple[list[int], dict[int, int], list[int], list[int]]:
    ids = sorted(adj)
    index = {u: i for i, u in enumerate(ids)}
    indptr = [0]
    indices: list[int] = []
    for u in ids:
        indices.extend(sorted(index[v] for v in adj[u]))
        indptr.append(len(indices))
    return ids, index, indptr, indices


def _is_complete(adj: Adjacency) -> bool:
    n = len(adj)
    return all(len(set(vs)) == n - 1 for vs in adj.values())


def components(adj: Adjacency, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``adj`` minus ``removed``, each sorted, ordered by smallest id."""
    removed = set(removed)
    seen = set(removed)
    out = []
    for start in sorted(adj):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def induced(adj: Adjacency, keep: Iterable[int]) -> dict[int, set[int]]:
    keep = set(keep)
    return {u: set(adj[u]) & keep for u in sorted(keep)}


# -- disjoint paths -----------------------------------------------------------

def max_disjoint_paths(g: Any, u: int, v: int, witness: bool = False):
    """Maximum number of internally node-disjoint u-v paths.

    An edge uv counts as one path. With ``witness=True`` returns
    ``(count, paths)`` where each path is a list of node ids from u to v.
    """
    adj = adjacency(g)
    if u == v:
        raise ValidationError("endpoints must differ")
    for x in (u, v):
        if x not in adj:
            raise ValidationError(f"unknown node {x}")
    ids, index, indptr, indices = to_csr(adj)
    s, t = index[u], index[v]
    if not witness:
        return kernels.local_connectivity(len(ids), indptr, indices, s, t, -1)
    paths = kernels.disjoint_paths(len(ids), indptr, indices, s, t)
    paths = sorted([ids[i] for i in p] for p in paths)
    return len(paths), paths


def vertex_connectivity(g: Any) -> int:
    """Size of a smallest separator, or n - 1 for a complete graph."""
    adj = adjacency(g)
    n = len(adj)
    if n < 2:
        raise ValidationError("vertex connectivity needs at least two nodes")
    if _is_complete(adj):
        return n - 1
    ids, index, indptr, indices = to_csr(adj)
    if n <= 12:
        pairs = [(x, y) for x, y in itertools.combinations(ids, 2) if y not in adj[x]]
    else:
        # Any minimum separator misses u (min degree) or, if it contains u,
        # splits two of u's neighbours.
        u = min(ids, key=lambda x: (len(adj[x]), x))
        pairs = [(u, w) for w in ids if w != u and w not in adj[u]]
        nbrs = sorted(adj[u])
        pairs += [(x, y) for x, y in itertools.combinations(nbrs, 2) if y not in adj[x]]
    return kernels.pairs_min_connectivity(
        n, indptr, indices, [index[x] for x, _ in pairs], [index[y] for _, y in pairs], -1
    )


def is_k_connected(g: Any, k: int) -> bool:
    """True iff g has at least k + 1 nodes and no separator with fewer than k nodes."""
    adj = adjacency(g)
    ids, _, indptr, indices = to_csr(adj)
    return kernels.is_k_connected(len(ids), indptr, indices, k)


def is_subset_k_connected(g: Any, terminals: Iterable[int], k: int) -> bool:
    """True iff every pair of terminals has at least k internally disjoint paths in g.

    Terminals absent from g count as isolated nodes.
    """
    adj = adjacency(g)
    T = sorted(set(terminals))
    if len(T) < 2:
        log.warning("subset connectivity with %d terminal(s) is vacuously true", len(T))
        return True
    if k <= 0:
        return True
    if any(t not in adj for t in T):
        return False
    ids, index, indptr, indices = to_csr(adj)
    return kernels.is_subset_k_connected(len(ids), indptr, indices, [index[t] for t in T], k)


# -- separators and decomposition ----------------------------------------------

@dataclass(frozen=True)
class Separator:
    nodes: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.nodes)

    def sorted(self) -> list[int]:
        return sorted(self.nodes)


def separates(adj: Adjacency, S: Iterable[int]) -> bool:
    return len(components(adj, S)) >= 2


def find_separator(g: Any, max_size: int) -> Separator | None:
    """Smallest separator of size <= max_size, lexicographically first among those."""
    adj = adjacency(g)
    if len(components(adj)) >= 2:
        return Separator(frozenset())
    if len(adj) < 3 or _is_complete(adj):
        return None
    kappa = vertex_connectivity(adj)
    if kappa > max_size:
        return None
    for S in itertools.combinations(sorted(adj), kappa):
        if separates(adj, S):
            return Separator(frozenset(S))
    raise AssertionError("connectivity value has no witnessing separator")


@dataclass(frozen=True)
class MarkedComponent:
    """``G[C u S]`` plus a clique on S; clique edges missing from G are tagged virtual."""

    nodes: frozenset[int]
    separator: frozenset[int]
    adjacency: dict[int, frozenset[int]] = field(compare=False)
    virtual: frozenset[tuple[int, int]]

    @property
    def real_edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u in self.adjacency for v in self.adjacency[u] if u < v} - set(self.virtual)


def marked_components(g: Any, S: Iterable[int]) -> list[MarkedComponent]:
    adj = adjacency(g)
    S = frozenset(S)
    comps = components(adj, S)
    if not S <= set(adj) or len(comps) < 2:
        raise ValidationError(f"{sorted(S)} is not a separator")
    virtual = frozenset(
        (a, b) for a, b in itertools.combinations(sorted(S), 2) if b not in adj[a]
    )
    out = []
    for comp in comps:
        keep = set(comp) | S
        sub = induced(adj, keep)
        for a, b in virtual:
            sub[a].add(b)
            sub[b].add(a)
        out.append(MarkedComponent(
            frozenset(keep), S, {u: frozenset(vs) for u, vs in sub.items()}, virtual
        ))
    return out


@dataclass
class BlockTree:
    """Bipartite tree of k-blocks and the k-separators used to split them."""

    k: int
    blocks: list[frozenset[int]]
    separators: list[Separator]
    incidence: list[tuple[int, int]]  # (block index, separator index)
    block_edges: list[set[tuple[int, int]]]

    @property
    def leaf_blocks(self) -> list[int]:
        if not self.separators:
            return list(range(len(self.blocks)))
        deg = [0] * len(self.blocks)
        for b, _ in self.incidence:
            deg[b] += 1
        return [i for i, d in enumerate(deg) if d == 1]

    def is_tree(self) -> bool:
        nb, ns = len(self.blocks), len(self.separators)
        if len(self.incidence) != nb + ns - 1:
            return False
        nbrs: dict[tuple[str, int], set] = {("b", i): set() for i in range(nb)}
        nbrs.update({("s", j): set() for j in range(ns)})
        for b, s in self.incidence:
            nbrs[("b", b)].add(("s", s))
            nbrs[("s", s)].add(("b", b))
        seen = {("b", 0)}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in nbrs[x] - seen:
                seen.add(y)
                queue.append(y)
        return len(seen) == nb + ns

    def is_path(self) -> bool:
        if not self.is_tree():
            return False
        deg: dict[tuple[str, int], int] = {}
        for b, s in self.incidence:
            deg[("b", b)] = deg.get(("b", b), 0) + 1
            deg[("s", s)] = deg.get(("s", s), 0) + 1
        return all(d <= 2 for d in deg.values())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "blocks": [sorted(b) for b in self.blocks],
            "separators": [s.sorted() for s in self.separators],
            "incidence": [list(p) for p in self.incidence],
            "leaf_blocks": self.leaf_blocks,
        }


def k_block_tree(g: Any, k: int) -> BlockTree:
    """Recursively split a k-connected graph along k-separators into k-blocks.

    Marked components carry virtual edges during the recursion; reported
    blocks are node sets, and ``block_edges`` holds only edges of g.
    """
    adj = adjacency(g)
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not is_k_connected(adj, k):
        raise ValidationError(f"graph is not {k}-connected")
    blocks: list[frozenset[int]] = []
    seps: list[frozenset[int]] = []
    queue: deque[dict] = deque([adj])
    while queue:
        H = queue.popleft()
        S = find_separator(H, k)
        if S is None:
            blocks.append(frozenset(H))
            continue
        if S.nodes not in seps:
            seps.append(S.nodes)
        for comp in marked_components(H, S.nodes):
            queue.append(comp.adjacency)
    blocks.sort(key=sorted)
    seps.sort(key=sorted)
    incidence = [(i, j) for i, b in enumerate(blocks) for j, s in enumerate(seps) if s <= b]
    block_edges = [
        {(u, v) for u in b for v in adj[u] if u < v and v in b} for b in blocks
    ]
    return BlockTree(k, blocks, [Separator(s) for s in seps], incidence, block_edges)


# -- dense edge-list helpers (hot paths of the exhaustive searches) -------------

def csr_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """CSR arrays for nodes ``0..n-1`` and the given undirected edges."""
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    indptr = [0]
    indices: list[int] = []
    for lst in nbrs:
        indices.extend(sorted(lst))
        indptr.append(len(indices))
    return indptr, indices


def edges_k_connected(n: int, edges: Iterable[tuple[int, int]], k: int) -> bool:
    indptr, indices = csr_from_edges(n, edges)
    return kernels.is_k_connected(n, indptr, indices, k)


def edges_subset_k_connected(n: int, edges: Iterable[tuple[int, int]], terminals: Iterable[int], k: int) -> bool:
    T = sorted(set(terminals))
    if len(T) < 2 or k <= 0:
        return True
    indptr, indices = csr_from_edges(n, edges)
    return kernels.is_subset_k_connected(n, indptr, indices, T, k)
