"""Pure-Python connectivity kernels.

Graphs arrive in CSR form over dense indices ``0..n-1``: the neighbours of
``x`` are ``indices[indptr[x]:indptr[x + 1]]`` and every undirected edge is
listed in both directions. Vertex-disjoint path counts are unit-capacity max
flows on the split digraph: node ``w`` becomes ``in(w) = 2w -> out(w) = 2w + 1``
with capacity 1, and edge ``xy`` becomes arcs ``out(x) -> in(y)`` and
``out(y) -> in(x)``. A flow from ``out(s)`` to ``in(t)`` never pays the node
capacity of ``s`` or ``t``.

``_kernels.pyx`` implements the same functions with the same signatures.
"""
from __future__ import annotations

from collections import deque


class _Net:
    __slots__ = ("first", "to", "nxt", "cap", "base")

    def __init__(self, n, indptr, indices):
        first = [-1] * (2 * n)
        to: list[int] = []
        nxt: list[int] = []
        cap: list[int] = []

        def arc(a, b):
            to.append(b)
            cap.append(1)
            nxt.append(first[a])
            first[a] = len(to) - 1
            to.append(a)
            cap.append(0)
            nxt.append(first[b])
            first[b] = len(to) - 1

        for w in range(n):
            arc(2 * w, 2 * w + 1)
        for x in range(n):
            for j in range(indptr[x], indptr[x + 1]):
                arc(2 * x + 1, 2 * indices[j])
        self.first = first
        self.to = to
        self.nxt = nxt
        self.cap = cap
        self.base = list(cap)

    def reset(self):
        self.cap[:] = self.base

    def flow(self, s, t, limit):
        """Augment from out(s) to in(t) until no path remains or ``limit`` is reached."""
        first, to, nxt, cap = self.first, self.to, self.nxt, self.cap
        src, sink = 2 * s + 1, 2 * t
        total = 0
        size = len(first)
        while limit < 0 or total < limit:
            parent = [-2] * size
            parent[src] = -1
            queue = deque([src])
            found = False
            while queue and not found:
                a = queue.popleft()
                e = first[a]
                while e != -1:
                    b = to[e]
                    if cap[e] > 0 and parent[b] == -2:
                        parent[b] = e
                        if b == sink:
                            found = True
                            break
                        queue.append(b)
                    e = nxt[e]
            if not found:
                break
            b = sink
            while b != src:
                e = parent[b]
                cap[e] -= 1
                cap[e ^ 1] += 1
                b = to[e ^ 1]
            total += 1
        return total

    def paths(self, s, t):
        """Decompose the current flow into vertex sequences from s to t."""
        used = [self.base[e] > self.cap[e] for e in range(len(self.cap))]
        out = []
        e = self.first[2 * s + 1]
        while e != -1:
            if used[e]:
                used[e] = False
                path = [s]
                node = self.to[e]
                while node != 2 * t:
                    w = node // 2
                    path.append(w)
                    f = self.first[2 * w + 1]
                    while not used[f]:
                        f = self.nxt[f]
                    used[f] = False
                    node = self.to[f]
                path.append(t)
                out.append(path)
            e = self.nxt[e]
        return out


def local_connectivity(n, indptr, indices, s, t, limit=-1):
    """Maximum number of internally vertex-disjoint s-t paths (capped at ``limit`` if >= 0)."""
    return _Net(n, indptr, indices).flow(s, t, limit)


def disjoint_paths(n, indptr, indices, s, t):
    net = _Net(n, indptr, indices)
    net.flow(s, t, -1)
    return net.paths(s, t)


def pairs_min_connectivity(n, indptr, indices, sources, targets, limit=-1):
    """Minimum local connectivity over the given pairs, stopping early at 0."""
    net = _Net(n, indptr, indices)
    best = limit
    for s, t in zip(sources, targets):
        net.reset()
        c = net.flow(s, t, best)
        if best < 0 or c < best:
            best = c
        if best == 0:
            break
    return best


def is_k_connected(n, indptr, indices, k):
    """True iff the graph has more than k nodes and no separator of fewer than k nodes."""
    if k <= 0:
        return True
    if n < k + 1:
        return False
    for x in range(n):
        if indptr[x + 1] - indptr[x] < k:
            return False
    net = _Net(n, indptr, indices)
    # Any separator smaller than k misses one of nodes 0..k-1, and that node is
    # then cut from some non-neighbour.
    for s in range(k):
        adjacent = set(indices[indptr[s]:indptr[s + 1]])
        for t in range(n):
            if t == s or t in adjacent:
                continue
            net.reset()
            if net.flow(s, t, k) < k:
                return False
    return True


def is_subset_k_connected(n, indptr, indices, terminals, k):
    if k <= 0:
        return True
    terminals = list(terminals)
    net = _Net(n, indptr, indices)
    for i, s in enumerate(terminals):
        for t in terminals[i + 1:]:
            net.reset()
            if net.flow(s, t, k) < k:
                return False
    return True
