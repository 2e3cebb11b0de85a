"""Named built-in instances used by tests, docs and the CLI ``gen --fixture`` flag."""
from __future__ import annotations

import math

from .udg import PointNode, UnitDiskGraph, build_udg


def _graph(coords, weights=None) -> UnitDiskGraph:
    weights = weights or [1.0] * len(coords)
    return build_udg(PointNode(i, x, y, w) for i, ((x, y), w) in enumerate(zip(coords, weights)))


def sq4() -> UnitDiskGraph:
    """Square of side 0.6, counter-clockwise from the origin; a K4."""
    return _graph([(0.0, 0.0), (0.6, 0.0), (0.6, 0.6), (0.0, 0.6)])


def path3() -> UnitDiskGraph:
    return _graph([(0.0, 0.0), (0.9, 0.0), (1.8, 0.0)])


def pent5() -> UnitDiskGraph:
    """Regular pentagon with side 0.9; node i is adjacent to i +- 1 (mod 5) only."""
    r = 0.9 / (2.0 * math.sin(math.pi / 5))
    return _graph([(r * math.cos(2 * math.pi * i / 5), r * math.sin(2 * math.pi * i / 5)) for i in range(5)])


def hex7() -> UnitDiskGraph:
    """Center node 0 plus a regular hexagon of circumradius 0.95 (nodes 1..6): a wheel."""
    coords = [(0.0, 0.0)]
    coords += [(0.95 * math.cos(math.pi * i / 3), 0.95 * math.sin(math.pi * i / 3)) for i in range(6)]
    return _graph(coords)


def star5() -> UnitDiskGraph:
    """Center 0 (weight 1) with four weight-10 leaves at distance 0.9 on the axes."""
    coords = [(0.0, 0.0), (0.9, 0.0), (0.0, 0.9), (-0.9, 0.0), (0.0, -0.9)]
    return _graph(coords, [1.0, 10.0, 10.0, 10.0, 10.0])


def bowtie() -> UnitDiskGraph:
    """Triangles {0,1,2} and {0,3,4} sharing node 0."""
    return _graph([(0.0, 0.0), (-0.6, 0.3), (-0.6, -0.3), (0.6, 0.3), (0.6, -0.3)])


FIXTURES = {
    "SQ4": sq4,
    "PATH3": path3,
    "PENT5": pent5,
    "HEX7": hex7,
    "STAR5": star5,
    "BOWTIE": bowtie,
}


def fixture(name: str) -> UnitDiskGraph:
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
