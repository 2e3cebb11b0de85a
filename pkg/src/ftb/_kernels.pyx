# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled connectivity kernels; same contract as ``_kernels_py``."""
from libc.stdlib cimport malloc, free


cdef struct Net:
    int size
    int narcs
    int* first
    int* to
    int* nxt
    int* cap
    int* base
    int* parent
    int* queue


cdef int net_init(Net* net, int n, object indptr, object indices) except -1:
    cdef int m = indptr[n]
    cdef int x, j, y, a, b, e
    net.size = 2 * n
    net.narcs = 2 * (n + m)
    net.first = <int*> malloc(max(net.size, 1) * sizeof(int))
    net.parent = <int*> malloc(max(net.size, 1) * sizeof(int))
    net.queue = <int*> malloc(max(net.size, 1) * sizeof(int))
    net.to = <int*> malloc(max(net.narcs, 1) * sizeof(int))
    net.nxt = <int*> malloc(max(net.narcs, 1) * sizeof(int))
    net.cap = <int*> malloc(max(net.narcs, 1) * sizeof(int))
    net.base = <int*> malloc(max(net.narcs, 1) * sizeof(int))
    if (net.first == NULL or net.parent == NULL or net.queue == NULL or net.to == NULL
            or net.nxt == NULL or net.cap == NULL or net.base == NULL):
        net_free(net)
        raise MemoryError()
    for x in range(net.size):
        net.first[x] = -1
    e = 0
    for x in range(n):
        e = add_arc(net, e, 2 * x, 2 * x + 1)
    for x in range(n):
        for j in range(<int> indptr[x], <int> indptr[x + 1]):
            y = indices[j]
            e = add_arc(net, e, 2 * x + 1, 2 * y)
    for j in range(net.narcs):
        net.base[j] = net.cap[j]
    return 0


cdef inline int add_arc(Net* net, int e, int a, int b):
    net.to[e] = b
    net.cap[e] = 1
    net.nxt[e] = net.first[a]
    net.first[a] = e
    net.to[e + 1] = a
    net.cap[e + 1] = 0
    net.nxt[e + 1] = net.first[b]
    net.first[b] = e + 1
    return e + 2


cdef void net_free(Net* net):
    free(net.first)
    free(net.parent)
    free(net.queue)
    free(net.to)
    free(net.nxt)
    free(net.cap)
    free(net.base)
    net.first = net.parent = net.queue = NULL
    net.to = net.nxt = net.cap = net.base = NULL


cdef inline void net_reset(Net* net):
    cdef int j
    for j in range(net.narcs):
        net.cap[j] = net.base[j]


cdef int net_flow(Net* net, int s, int t, int limit):
    cdef int src = 2 * s + 1
    cdef int sink = 2 * t
    cdef int total = 0
    cdef int head, tail, a, b, e, i
    cdef bint found
    while limit < 0 or total < limit:
        for i in range(net.size):
            net.parent[i] = -2
        net.parent[src] = -1
        head = 0
        tail = 0
        net.queue[tail] = src
        tail += 1
        found = False
        while head < tail and not found:
            a = net.queue[head]
            head += 1
            e = net.first[a]
            while e != -1:
                b = net.to[e]
                if net.cap[e] > 0 and net.parent[b] == -2:
                    net.parent[b] = e
                    if b == sink:
                        found = True
                        break
                    net.queue[tail] = b
                    tail += 1
                e = net.nxt[e]
        if not found:
            break
        b = sink
        while b != src:
            e = net.parent[b]
            net.cap[e] -= 1
            net.cap[e ^ 1] += 1
            b = net.to[e ^ 1]
        total += 1
    return total


def local_connectivity(int n, indptr, indices, int s, int t, int limit=-1):
    cdef Net net
    net_init(&net, n, indptr, indices)
    try:
        return net_flow(&net, s, t, limit)
    finally:
        net_free(&net)


def disjoint_paths(int n, indptr, indices, int s, int t):
    from ._kernels_py import disjoint_paths as _py_paths
    return _py_paths(n, indptr, indices, s, t)


def pairs_min_connectivity(int n, indptr, indices, sources, targets, int limit=-1):
    cdef Net net
    cdef int best = limit
    cdef int c
    net_init(&net, n, indptr, indices)
    try:
        for s, t in zip(sources, targets):
            net_reset(&net)
            c = net_flow(&net, s, t, best)
            if best < 0 or c < best:
                best = c
            if best == 0:
                break
        return best
    finally:
        net_free(&net)


def is_k_connected(int n, indptr, indices, int k):
    cdef Net net
    cdef int x, s, t, j
    cdef int* mark
    if k <= 0:
        return True
    if n < k + 1:
        return False
    for x in range(n):
        if <int> indptr[x + 1] - <int> indptr[x] < k:
            return False
    mark = <int*> malloc(n * sizeof(int))
    if mark == NULL:
        raise MemoryError()
    net_init(&net, n, indptr, indices)
    try:
        for x in range(n):
            mark[x] = -1
        for s in range(k):
            for j in range(<int> indptr[s], <int> indptr[s + 1]):
                mark[<int> indices[j]] = s
            for t in range(n):
                if t == s or mark[t] == s:
                    continue
                net_reset(&net)
                if net_flow(&net, s, t, k) < k:
                    return False
        return True
    finally:
        net_free(&net)
        free(mark)


def is_subset_k_connected(int n, indptr, indices, terminals, int k):
    cdef Net net
    cdef int i, j, nt
    cdef list ts
    if k <= 0:
        return True
    ts = list(terminals)
    nt = len(ts)
    net_init(&net, n, indptr, indices)
    try:
        for i in range(nt):
            for j in range(i + 1, nt):
                net_reset(&net)
                if net_flow(&net, ts[i], ts[j], k) < k:
                    return False
        return True
    finally:
        net_free(&net)
