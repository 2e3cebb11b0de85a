"""Best-first enumeration of node subsets in nondecreasing total weight."""
from __future__ import annotations

import heapq
import math
from typing import Callable, Iterable, Iterator, Sequence

WEIGHT_TIE_TOL = 1e-12


def subsets_by_weight(items: Sequence[int], weights: Sequence[float]) -> Iterator[tuple[float, tuple[int, ...]]]:
    """Yield ``(weight, sorted subset)`` for every subset of ``items``, lightest first.

    ``weights[i]`` belongs to ``items[i]``; weights must be nonnegative. Each
    subset appears exactly once. Successors of a subset whose heaviest member
    sits at sorted position j either append position j + 1 or move j to j + 1.
    """
    order = sorted(range(len(items)), key=lambda i: (weights[i], items[i]))
    ws = [weights[i] for i in order]
    ids = [items[i] for i in order]
    yield 0.0, ()
    if not ids:
        return
    heap = [(ws[0], (ids[0],), (0,))]
    while heap:
        total, key, pos = heapq.heappop(heap)
        yield total, key
        j = pos[-1]
        if j + 1 < len(ids):
            grow = pos + (j + 1,)
            heapq.heappush(heap, (math.fsum(ws[p] for p in grow), tuple(sorted(ids[p] for p in grow)), grow))
            shift = pos[:-1] + (j + 1,)
            heapq.heappush(heap, (math.fsum(ws[p] for p in shift), tuple(sorted(ids[p] for p in shift)), shift))


def lightest_feasible(
    items: Sequence[int],
    weights: Sequence[float],
    feasible: Callable[[tuple[int, ...]], bool],
    forced: Iterable[int] = (),
    forced_weight: float = 0.0,
) -> tuple[tuple[int, ...], float] | None:
    """Minimum-weight ``forced + subset`` passing ``feasible``.

    Among sets whose weight ties the optimum (within 1e-12) the
    lexicographically smallest sorted tuple wins.
    """
    forced = tuple(forced)
    found: tuple[int, ...] | None = None
    found_w = 0.0
    for w, subset in subsets_by_weight(items, weights):
        if found is not None and w > found_w + WEIGHT_TIE_TOL:
            break
        cand = tuple(sorted(forced + subset))
        if feasible(cand) and (found is None or cand < found):
            if found is None:
                found_w = w
            found = cand
    if found is None:
        return None
    return found, math.fsum([forced_weight, found_w])
