"""Compare the compiled and pure-Python connectivity kernels.

Run with ``python benchmarks/bench_kernels.py``. Prints one line per
workload with the best-of-N wall time of each backend and the speedup.
"""
from __future__ import annotations

import argparse
import importlib
import timeit

from ftb import _kernels_py
from ftb.bench import k_connected_instance
from ftb.connectivity import to_csr
from ftb.spanning import exact_k_mss


def _compiled():
    try:
        return importlib.import_module("ftb._kernels")
    except ImportError:
        return None


def _workloads(n: int, k: int, seed: int):
    g, _, _ = k_connected_instance(n, k, seed)
    ids, _, indptr, indices = to_csr(g.adjacency)
    pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
    src = [s for s, _ in pairs]
    dst = [t for _, t in pairs]
    terminals = list(range(0, n, 2))
    return {
        f"is_k_connected n={n} k={k}": lambda mod: mod.is_k_connected(n, indptr, indices, k),
        f"all-pairs min connectivity n={n}": lambda mod: mod.pairs_min_connectivity(n, indptr, indices, src, dst, -1),
        f"subset {k}-connected |T|={len(terminals)}": lambda mod: mod.is_subset_k_connected(n, indptr, indices, terminals, k),
    }


def _time(fn, repeat: int) -> float:
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    compiled = _compiled()
    if compiled is None:
        print("compiled extension not built; only the pure-Python backend is available")
    print(f"{'workload':42s} {'python':>11s} {'cython':>11s} {'speedup':>8s}")
    for n, k in [(12, 2), (30, 3), (60, 3)]:
        for name, work in _workloads(n, k, args.seed).items():
            py = _time(lambda: work(_kernels_py), args.repeat)
            if compiled is None:
                print(f"{name:42s} {py * 1e3:9.3f}ms {'-':>11s} {'-':>8s}")
                continue
            assert work(_kernels_py) == work(compiled), f"backends disagree on {name}"
            cy = _time(lambda: work(compiled), args.repeat)
            print(f"{name:42s} {py * 1e3:9.3f}ms {cy * 1e3:9.3f}ms {py / cy:7.1f}x")

    # End to end: the exhaustive spanning-subgraph search is flow-kernel bound.
    g, _, _ = k_connected_instance(9, 2, args.seed)
    import ftb.connectivity as conn

    saved = conn.kernels.is_k_connected
    try:
        conn.kernels.is_k_connected = _kernels_py.is_k_connected
        py = _time(lambda: exact_k_mss(g, 2, cap=64), 1)
        if compiled is not None:
            conn.kernels.is_k_connected = compiled.is_k_connected
            cy = _time(lambda: exact_k_mss(g, 2, cap=64), 1)
            print(f"{'exact 2-MSS n=9 (' + str(g.num_edges) + ' edges)':42s} {py * 1e3:9.3f}ms {cy * 1e3:9.3f}ms {py / cy:7.1f}x")
    finally:
        conn.kernels.is_k_connected = saved


if __name__ == "__main__":
    main()
